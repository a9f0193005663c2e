import math

import pytest
from hypothesis import given, strategies as st

from wmnroute.errors import (
    InvalidPathError,
    LinkMismatchError,
    PathCycleError,
)
from wmnroute.graph import (
    Graph,
    INFINITE_RATE,
    Link,
    Path,
    RouteQuery,
    path_concat,
    path_delay,
    path_rate,
    validate_graph,
)
from wmnroute.oracle import canonical_graph


@pytest.fixture
def cg():
    return canonical_graph()


def chain_graph(rates, delays):
    links = [(i, i + 1, r, d) for i, (r, d) in enumerate(zip(rates, delays))]
    return Graph.from_links(len(rates) + 1, links)


class TestPathMetrics:
    def test_rate_is_min_of_links(self):
        g = chain_graph([5.0, 7.0, 6.0], [2.0, 2.0, 2.0])
        assert path_rate([0, 1, 2, 3], g) == 5.0

    def test_single_node_rate_sentinel(self, cg):
        assert path_rate([0], cg) == INFINITE_RATE

    def test_single_link_rate_identity(self):
        g = chain_graph([3.0], [1.0])
        assert path_rate([0, 1], g) == 3.0

    def test_three_hops_of_2ms_sum_to_6ms(self):
        g = chain_graph([5.0, 5.0, 5.0], [2.0, 2.0, 2.0])
        assert path_delay([0, 1, 2, 3], g) == 6.0

    def test_single_node_delay_zero(self, cg):
        assert path_delay([3], cg) == 0.0

    def test_delay_addition(self):
        g = chain_graph([5.0, 5.0], [1.5, 2.5])
        assert path_delay([0, 1, 2], g) == 4.0

    def test_invalid_pair_raises(self, cg):
        with pytest.raises(InvalidPathError):
            path_rate([cg.node_index("u"), cg.node_index("y")], cg)

    def test_repeated_node_raises(self, cg):
        u, a = cg.node_index("u"), cg.node_index("a")
        with pytest.raises(InvalidPathError):
            path_delay([u, a, u], cg)


class TestPathConcat:
    def test_single_extension(self, cg):
        u = cg.node_index("u")
        link = cg.arc(u, cg.node_index("a"))
        path = path_concat(Path.trivial(u), link)
        assert path.nodes == (u, cg.node_index("a"))
        assert path_rate(path, cg) == 5.0
        assert path_delay(path, cg) == 2.0

    def test_rate_min_delay_sum(self, cg):
        u, a, w = (cg.node_index(c) for c in "uaw")
        path = path_concat(Path.trivial(u), cg.arc(u, a))
        path = path_concat(path, cg.arc(a, w))
        assert path_rate(path, cg) == min(5.0, 7.0) == 5.0
        assert path_delay(path, cg) == 4.0

    def test_endpoint_mismatch(self, cg):
        u, a = cg.node_index("u"), cg.node_index("a")
        wrong = cg.arc(cg.node_index("w"), cg.node_index("y"))
        path = path_concat(Path.trivial(u), cg.arc(u, a))
        with pytest.raises(LinkMismatchError):
            path_concat(path, wrong)

    def test_cycle_refused(self, cg):
        u, a = cg.node_index("u"), cg.node_index("a")
        path = path_concat(Path.trivial(u), cg.arc(u, a))
        with pytest.raises(PathCycleError):
            path_concat(path, cg.arc(a, u))


@st.composite
def chain_specs(draw):
    hops = draw(st.integers(min_value=0, max_value=12))
    rates = draw(
        st.lists(
            st.floats(min_value=0.01, max_value=1e6, allow_nan=False),
            min_size=hops, max_size=hops,
        )
    )
    delays = draw(
        st.lists(
            st.floats(min_value=0.0, max_value=1e6, allow_nan=False),
            min_size=hops, max_size=hops,
        )
    )
    return rates, delays


class TestPathProperties:
    @given(chain_specs())
    def test_rate_is_lower_bound_attained(self, spec):
        rates, delays = spec
        g = chain_graph(rates, delays)
        nodes = list(range(len(rates) + 1))
        r = path_rate(nodes, g)
        if not rates:
            assert r == INFINITE_RATE
        else:
            assert all(r <= lr for lr in rates)
            assert any(r == lr for lr in rates)

    @given(chain_specs())
    def test_concat_matches_metrics_exactly(self, spec):
        rates, delays = spec
        g = chain_graph(rates, delays)
        path = Path.trivial(0)
        for i in range(len(rates)):
            link = g.arc(i, i + 1)
            extended = path_concat(path, link)
            assert path_delay(extended, g) == path_delay(path, g) + link.delay
            assert path_rate(extended, g) == min(path_rate(path, g), link.rate)
            path = extended

    @given(chain_specs())
    def test_delay_left_to_right_sum(self, spec):
        rates, delays = spec
        g = chain_graph(rates, delays)
        nodes = list(range(len(rates) + 1))
        total = 0.0
        for d in delays:
            total += d
        assert path_delay(nodes, g) == total


class TestValidateGraph:
    def test_canonical_graph_is_clean(self, cg):
        assert validate_graph(cg) == []

    def test_zero_rate_link_flagged(self):
        g = Graph(n=2, links=(Link(0, 1, 0.0, 1.0), Link(1, 0, 0.0, 1.0)))
        report = validate_graph(g)
        assert len([m for m in report if "rate" in m]) == 2

    def test_missing_reverse_arc_flagged(self):
        g = Graph(n=3, links=(Link(0, 1, 5.0, 1.0), Link(1, 0, 5.0, 1.0),
                              Link(1, 2, 4.0, 1.0)))
        report = validate_graph(g)
        assert [m for m in report if "missing reverse" in m]

    def test_side_effects_none_for_bad_endpoint(self):
        g = Graph(n=2, links=(Link(0, 5, 1.0, 1.0),))
        report = validate_graph(g)
        assert any("out of range" in m for m in report)

    def test_negative_delay_flagged(self):
        g = Graph(n=2, links=(Link(0, 1, 1.0, -0.5), Link(1, 0, 1.0, -0.5)))
        assert any("delay" in m for m in validate_graph(g))

    def test_asymmetric_attributes_flagged(self):
        g = Graph(n=2, links=(Link(0, 1, 5.0, 1.0), Link(1, 0, 4.0, 1.0)))
        assert any("differ" in m for m in validate_graph(g))


class TestIngest:
    def test_parallel_links_keep_better_rate(self, caplog):
        links = [(0, 1, 3.0, 2.0), (1, 0, 7.0, 2.0), (0, 1, 5.0, 2.0)]
        g = Graph.from_links(2, links)
        assert g.link_count == 1
        assert g.arc(0, 1).rate == 7.0

    def test_query_bound_must_be_nonnegative(self):
        from wmnroute.errors import InvalidQueryError

        with pytest.raises(InvalidQueryError):
            RouteQuery(0, 1, -1.0)
