"""Agreement harness and runtime measurement for the routing solvers.

:func:`compare_on_instance` runs all four DP solvers plus the exact
oracles on one instance, records whether the answers agree, and persists
a replayable counterexample bundle whenever they do not.  Divergence is
surfaced, never patched: the single-label schemes are greedy and can miss
the optimum on rare instances, and the harness exists to quantify that.

:func:`measure_runtime` and :func:`fit_complexity_exponent` measure how
each solver's wall time scales with node count on fixed-density random
geometric graphs, fitting the log-log slope.
"""

from __future__ import annotations

import json
import math
import os
import statistics
import time
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Callable, Optional, Sequence

from .errors import BudgetExceededError, InsufficientDataError, InvalidParamsError
from .graph import Graph, RouteQuery, RouteResult, RouteStatus
from .graph_io import dump_graph, graph_from_dict
from .oracle import brute_force_route, threshold_exact_route
from .routing import (
    default_tick,
    route_bellman_ford,
    route_dijkstra,
    route_floyd_warshall,
    route_from_table,
    route_mra,
)
from .topology import TopologyParams, ValueModel, generate_topology

#: The three classical solvers whose pairwise agreement mirrors the
#: published comparison; MRA is tracked against the oracle separately.
CLASSICAL_ALGORITHMS = ("dijkstra", "bellman-ford", "floyd-warshall")
ALGORITHMS = CLASSICAL_ALGORITHMS + ("mra",)

COUNTEREXAMPLE_DIR_ENV = "WMNROUTE_COUNTEREXAMPLE_DIR"


def run_algorithm(
    name: str, graph: Graph, query: RouteQuery, *, mra_tick: Optional[float] = None
) -> RouteResult:
    """Run one solver by CLI name on one query."""
    if name == "dijkstra":
        return route_dijkstra(graph, query)
    if name == "bellman-ford":
        table = route_bellman_ford(graph, query.source, query.bound)
        return route_from_table(table, query)
    if name == "floyd-warshall":
        table = route_floyd_warshall(graph, query.bound)
        return route_from_table(table, query)
    if name == "mra":
        return route_mra(graph, query, mra_tick)
    if name == "oracle":
        return threshold_exact_route(graph, query)
    raise InvalidParamsError(f"unknown algorithm {name!r}")


@dataclass
class AgreementReport:
    """Outcome of one instance: per-solver results and agreement flags."""

    instance: dict
    results: dict[str, RouteResult]
    oracle: Optional[RouteResult]
    oracle_kind: str
    threshold: RouteResult
    agree_rates: bool
    matches_oracle: dict[str, Optional[bool]]
    oracles_agree: Optional[bool]
    counterexample_path: Optional[str] = None

    @property
    def clean(self) -> bool:
        return (
            self.agree_rates
            and self.oracles_agree is not False
            and all(v is not False for v in self.matches_oracle.values())
        )

    def signature(self) -> dict:
        """Comparable surface used to check that a replay reproduces the
        report (paths may legitimately differ under ties; rates may not)."""
        return {
            "results": {
                name: (res.status.value, res.rate)
                for name, res in sorted(self.results.items())
            },
            "oracle": (self.oracle.status.value, self.oracle.rate)
            if self.oracle is not None
            else None,
            "oracle_kind": self.oracle_kind,
            "threshold": (self.threshold.status.value, self.threshold.rate),
            "agree_rates": self.agree_rates,
            "matches_oracle": dict(sorted(self.matches_oracle.items())),
            "oracles_agree": self.oracles_agree,
        }


def _same_answer(a: RouteResult, b: RouteResult) -> bool:
    if a.status is not b.status:
        return False
    if a.status is RouteStatus.INFEASIBLE:
        return True
    return a.rate == b.rate


def _result_to_dict(res: RouteResult, graph: Graph) -> dict:
    out: dict = {"status": res.status.value}
    if res.is_found:
        out["rate_mbps"] = res.rate if math.isfinite(res.rate) else "inf"
        out["delay_ms"] = res.delay
        out["path"] = [graph.node_name(i) for i in res.path.nodes]
    return out


def compare_on_instance(
    graph: Graph,
    query: RouteQuery,
    *,
    instance: Optional[dict] = None,
    mra_tick: Optional[float] = None,
    brute_force_max_nodes: int = 14,
    counterexample_dir: Optional[str] = None,
    write_counterexamples: bool = True,
) -> AgreementReport:
    """Run every solver and both oracles on one instance.

    ``matches_oracle`` is judged against the brute-force enumeration when
    it fits its budget, else against the threshold solver (still exact);
    a solver's entry is ``None`` only if no oracle produced an answer.
    On any disagreement a replayable bundle (graph.json, query.json,
    results.json) is written under ``counterexample_dir`` (or the
    ``WMNROUTE_COUNTEREXAMPLE_DIR`` environment variable, default
    ``./counterexamples``).
    """
    query.validate(graph)
    if mra_tick is None:
        mra_tick = default_tick(graph, query.bound)
    results = {
        name: run_algorithm(name, graph, query, mra_tick=mra_tick)
        for name in ALGORITHMS
    }

    threshold = threshold_exact_route(graph, query)
    brute: Optional[RouteResult] = None
    try:
        brute = brute_force_route(graph, query, max_nodes=brute_force_max_nodes)
    except BudgetExceededError:
        brute = None
    if brute is not None:
        oracle, oracle_kind = brute, "brute-force"
        oracles_agree = _same_answer(brute, threshold)
    else:
        oracle, oracle_kind = threshold, "threshold"
        oracles_agree = None

    first = results[CLASSICAL_ALGORITHMS[0]]
    agree_rates = all(
        _same_answer(first, results[name]) for name in CLASSICAL_ALGORITHMS[1:]
    )
    matches_oracle = {
        name: _same_answer(res, oracle) if oracle is not None else None
        for name, res in results.items()
    }

    report = AgreementReport(
        instance=dict(instance or {}),
        results=results,
        oracle=oracle,
        oracle_kind=oracle_kind,
        threshold=threshold,
        agree_rates=agree_rates,
        matches_oracle=matches_oracle,
        oracles_agree=oracles_agree,
    )
    if write_counterexamples and not report.clean:
        report.counterexample_path = _persist_counterexample(
            graph, query, report, mra_tick, counterexample_dir
        )
    return report


def _counterexample_root(counterexample_dir: Optional[str]) -> FsPath:
    if counterexample_dir is not None:
        return FsPath(counterexample_dir)
    return FsPath(os.environ.get(COUNTEREXAMPLE_DIR_ENV, "counterexamples"))


def _persist_counterexample(
    graph: Graph,
    query: RouteQuery,
    report: AgreementReport,
    mra_tick: float,
    counterexample_dir: Optional[str],
) -> str:
    root = _counterexample_root(counterexample_dir)
    tag = "-".join(
        str(report.instance.get(key))
        for key in ("seed", "n")
        if key in report.instance
    )
    name = f"ce_{tag + '_' if tag else ''}" \
           f"s{query.source}_d{query.destination}_tau{query.bound:g}"
    bundle = root / name
    suffix = 0
    while bundle.exists():
        suffix += 1
        bundle = root / f"{name}_{suffix}"
    bundle.mkdir(parents=True)
    (bundle / "graph.json").write_text(dump_graph(graph), encoding="utf-8")
    (bundle / "query.json").write_text(
        json.dumps(
            {
                "source": graph.node_name(query.source),
                "destination": graph.node_name(query.destination),
                "bound_ms": repr(query.bound),
                "mra_tick_ms": repr(mra_tick),
                "instance": report.instance,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    (bundle / "results.json").write_text(
        json.dumps(
            {
                "algorithms": {
                    name: _result_to_dict(res, graph)
                    for name, res in report.results.items()
                },
                "oracle_kind": report.oracle_kind,
                "oracle": _result_to_dict(report.oracle, graph)
                if report.oracle
                else None,
                "threshold": _result_to_dict(report.threshold, graph),
                "agree_rates": report.agree_rates,
                "matches_oracle": report.matches_oracle,
                "oracles_agree": report.oracles_agree,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    return str(bundle)


def replay_counterexample(bundle_dir) -> AgreementReport:
    """Re-run :func:`compare_on_instance` on a persisted bundle."""
    bundle = FsPath(bundle_dir)
    data = json.loads((bundle / "graph.json").read_text(encoding="utf-8"))
    graph = graph_from_dict(data)
    meta = json.loads((bundle / "query.json").read_text(encoding="utf-8"))
    query = RouteQuery(
        graph.node_index(meta["source"]),
        graph.node_index(meta["destination"]),
        float(meta["bound_ms"]),
    )
    return compare_on_instance(
        graph,
        query,
        instance=meta.get("instance"),
        mra_tick=float(meta["mra_tick_ms"]),
        write_counterexamples=False,
    )


# ---------------------------------------------------------------------------
# runtime measurement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimingRecord:
    """Median wall time of one solver at one size.

    ``spread_s`` is max - min over the repetitions.  Graph generation and
    result verification stay outside the timed region.
    """

    algorithm: str
    n: int
    links: int
    repetitions: int
    median_s: float
    spread_s: float


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares slope of log(median time) against log(n)."""

    algorithm: str
    slope: float
    residual: float
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class BenchParams:
    """Knobs for :func:`measure_runtime`."""

    seed: int = 1
    expected_degree: float = 12.0
    repetitions: int = 5
    bound: float = 50.0
    rate_model: ValueModel = ValueModel.uniform(1.0, 10.0)
    delay_model: ValueModel = ValueModel.constant(2.0)
    area_side: float = 1000.0


def radius_for_expected_degree(n: int, area_side: float, degree: float) -> float:
    """Coverage radius giving each node ~``degree`` expected neighbours.

    Uses the uniform-placement estimate degree = (n-1) * pi * r^2 / A^2,
    capped at the square's diagonal.
    """
    if n < 2:
        return area_side
    r = area_side * math.sqrt(degree / (math.pi * (n - 1)))
    return min(r, area_side * math.sqrt(2.0))


def _timed_call(algorithm: str, graph: Graph, params: BenchParams) -> Callable[[], object]:
    query = RouteQuery(0, graph.n - 1, params.bound)
    if algorithm == "dijkstra":
        return lambda: route_dijkstra(graph, query)
    if algorithm == "bellman-ford":
        return lambda: route_bellman_ford(graph, 0, params.bound)
    if algorithm == "floyd-warshall":
        return lambda: route_floyd_warshall(graph, params.bound)
    if algorithm == "mra":
        tick = default_tick(graph, params.bound)
        return lambda: route_mra(graph, query, tick)
    raise InvalidParamsError(f"unknown algorithm {algorithm!r}")


def measure_runtime(
    algorithm: str,
    sizes: Sequence[int],
    params: BenchParams = BenchParams(),
) -> list[TimingRecord]:
    """Median single-threaded wall time per size on pre-generated graphs.

    Sizes must be ascending.  Each size runs one discarded warm-up plus
    ``params.repetitions`` timed repetitions (at least 5) on the same
    graph, timed with the monotonic performance counter.
    """
    if list(sizes) != sorted(set(sizes)):
        raise InvalidParamsError("sizes must be strictly ascending")
    if params.repetitions < 5:
        raise InvalidParamsError("at least 5 repetitions required")
    records = []
    for n in sizes:
        topo = TopologyParams(
            n=n,
            area_side=params.area_side,
            radius=radius_for_expected_degree(
                n, params.area_side, params.expected_degree
            ),
            seed=params.seed,
            rate_model=params.rate_model,
            delay_model=params.delay_model,
        )
        graph = generate_topology(topo)
        call = _timed_call(algorithm, graph, params)
        call()  # warm-up, discarded
        times = []
        for _ in range(params.repetitions):
            t0 = time.perf_counter()
            call()
            times.append(time.perf_counter() - t0)
        records.append(
            TimingRecord(
                algorithm=algorithm,
                n=n,
                links=graph.link_count,
                repetitions=params.repetitions,
                median_s=statistics.median(times),
                spread_s=max(times) - min(times),
            )
        )
    return records


def fit_complexity_exponent(
    records: Sequence[TimingRecord],
    *,
    min_sizes: int = 5,
    min_span: float = 8.0,
) -> ExponentFit:
    """Fit log(median time) = slope * log(n) + c by least squares.

    Requires records from a single algorithm over at least ``min_sizes``
    distinct sizes spanning at least ``min_span`` in ratio.  ``residual``
    is the root-mean-square deviation in log space.
    """
    if not records:
        raise InsufficientDataError("no timing records")
    algos = {rec.algorithm for rec in records}
    if len(algos) != 1:
        raise InsufficientDataError(f"records mix algorithms: {sorted(algos)}")
    by_n = {}
    for rec in records:
        by_n[rec.n] = rec.median_s
    sizes = sorted(by_n)
    if len(sizes) < min_sizes:
        raise InsufficientDataError(
            f"need >= {min_sizes} sizes, got {len(sizes)}"
        )
    if sizes[-1] / sizes[0] < min_span:
        raise InsufficientDataError(
            f"sizes span {sizes[-1] / sizes[0]:.2f}x, need >= {min_span}x"
        )
    xs = [math.log(n) for n in sizes]
    ys = [math.log(max(by_n[n], 1e-12)) for n in sizes]
    mean_x = statistics.fmean(xs)
    mean_y = statistics.fmean(ys)
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    rss = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    return ExponentFit(
        algorithm=records[0].algorithm,
        slope=slope,
        residual=math.sqrt(rss / len(xs)),
        sizes=tuple(sizes),
    )
