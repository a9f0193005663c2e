import math

import pytest

from wmnroute.bench import (
    ALGORITHMS,
    AgreementReport,
    BenchParams,
    CLASSICAL_ALGORITHMS,
    TimingRecord,
    compare_on_instance,
    fit_complexity_exponent,
    measure_runtime,
    radius_for_expected_degree,
    replay_counterexample,
)
from wmnroute.errors import InsufficientDataError, InvalidParamsError
from wmnroute.graph import Graph, RouteQuery
from wmnroute.oracle import canonical_graph

from helpers import divergence_graph


class TestCompareOnInstance:
    def test_worked_example_agrees_everywhere(self, tmp_path):
        cg = canonical_graph()
        query = RouteQuery(cg.node_index("u"), cg.node_index("y"), 6.0)
        report = compare_on_instance(
            cg, query, counterexample_dir=str(tmp_path)
        )
        assert report.agree_rates
        assert all(v is True for v in report.matches_oracle.values())
        assert report.oracles_agree
        assert report.counterexample_path is None
        assert not list(tmp_path.iterdir())

    def test_trivial_instance(self, tmp_path):
        g = Graph.from_links(1, [])
        report = compare_on_instance(
            g, RouteQuery(0, 0, 0.0), counterexample_dir=str(tmp_path)
        )
        for res in report.results.values():
            assert res.is_found and res.rate == math.inf and res.delay == 0.0
        assert report.clean

    def test_divergence_is_persisted_and_replayable(self, tmp_path):
        graph, query = divergence_graph()
        report = compare_on_instance(
            graph,
            query,
            instance={"seed": 0, "n": graph.n},
            counterexample_dir=str(tmp_path),
        )
        assert not report.clean
        # the flooding table finds the optimum here; the label schemes miss it
        assert report.matches_oracle["mra"] is True
        for name in CLASSICAL_ALGORITHMS:
            assert report.matches_oracle[name] is False
        assert report.counterexample_path is not None
        bundle = tmp_path / report.counterexample_path.split("/")[-1]
        assert (bundle / "graph.json").exists()
        assert (bundle / "query.json").exists()
        assert (bundle / "results.json").exists()

        replayed = replay_counterexample(report.counterexample_path)
        assert replayed.signature() == report.signature()

    def test_env_var_overrides_bundle_dir(self, tmp_path, monkeypatch):
        import wmnroute.bench as bench_mod

        monkeypatch.setenv(bench_mod.COUNTEREXAMPLE_DIR_ENV, str(tmp_path / "env"))
        graph, query = divergence_graph()
        report = compare_on_instance(graph, query)
        assert report.counterexample_path.startswith(str(tmp_path / "env"))

    def test_budget_exceeded_falls_back_to_threshold(self, tmp_path):
        cg = canonical_graph()
        query = RouteQuery(cg.node_index("u"), cg.node_index("y"), 6.0)
        report = compare_on_instance(
            cg, query, brute_force_max_nodes=2, counterexample_dir=str(tmp_path)
        )
        assert report.oracle_kind == "threshold"
        assert report.oracles_agree is None
        assert all(v is True for v in report.matches_oracle.values())


class TestMeasureRuntime:
    def test_records_shape_and_monotonicity(self):
        records = measure_runtime(
            "floyd-warshall", [10, 20, 40, 80],
            BenchParams(seed=2, repetitions=5),
        )
        assert [r.n for r in records] == [10, 20, 40, 80]
        assert all(r.repetitions == 5 for r in records)
        medians = [r.median_s for r in records]
        assert medians == sorted(medians)

    def test_sizes_must_ascend(self):
        with pytest.raises(InvalidParamsError):
            measure_runtime("dijkstra", [20, 10], BenchParams())

    def test_at_least_five_reps(self):
        with pytest.raises(InvalidParamsError):
            measure_runtime("dijkstra", [10], BenchParams(repetitions=3))

    def test_unknown_algorithm(self):
        with pytest.raises(InvalidParamsError):
            measure_runtime("quantum", [10, 20], BenchParams())

    def test_radius_density_heuristic(self):
        # expected degree stays put as n grows when the radius shrinks with it
        for n in (50, 200, 800):
            r = radius_for_expected_degree(n, 1000.0, 12.0)
            degree = (n - 1) * math.pi * r * r / 1000.0**2
            assert degree == pytest.approx(12.0, rel=1e-9)


def synthetic_records(algorithm, exponent, sizes=(50, 100, 150, 250, 400)):
    return [
        TimingRecord(
            algorithm=algorithm,
            n=n,
            links=4 * n,
            repetitions=5,
            median_s=1e-6 * n**exponent,
            spread_s=0.0,
        )
        for n in sizes
    ]


class TestExponentFit:
    def test_cubic_records_fit_near_three(self):
        fit = fit_complexity_exponent(synthetic_records("floyd-warshall", 3.0))
        assert 2.5 <= fit.slope <= 3.5
        assert fit.residual < 1e-9

    def test_quadratic_records_fit_near_two(self):
        fit = fit_complexity_exponent(synthetic_records("dijkstra", 2.0))
        assert 1.5 <= fit.slope <= 2.5

    def test_constant_time_control(self):
        fit = fit_complexity_exponent(synthetic_records("noop", 0.0))
        assert -0.3 <= fit.slope <= 0.3

    def test_too_few_sizes_rejected(self):
        records = synthetic_records("dijkstra", 2.0, sizes=(50, 100, 200, 400))
        with pytest.raises(InsufficientDataError):
            fit_complexity_exponent(records)
        fit = fit_complexity_exponent(records, min_sizes=4)
        assert fit.slope == pytest.approx(2.0, abs=1e-9)

    def test_narrow_span_rejected(self):
        records = synthetic_records("dijkstra", 2.0, sizes=(50, 55, 60, 65, 70))
        with pytest.raises(InsufficientDataError):
            fit_complexity_exponent(records)

    def test_mixed_algorithms_rejected(self):
        records = synthetic_records("a", 2.0) + synthetic_records("b", 2.0)
        with pytest.raises(InsufficientDataError):
            fit_complexity_exponent(records)
