import json

import pytest
from hypothesis import given, settings, strategies as st

from wmnroute.errors import GraphFormatError
from wmnroute.graph import Graph, Path
from wmnroute.graph_io import (
    dump_graph,
    export_dot,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    save_graph,
)
from wmnroute.oracle import canonical_graph, threshold_exact_route
from wmnroute.graph import RouteQuery
from wmnroute.topology import TopologyParams, generate_topology


@pytest.fixture
def cg():
    return canonical_graph()


class TestRoundTrip:
    def test_identity_on_canonical_graph(self, cg):
        assert graph_from_dict(graph_to_dict(cg)) == cg

    def test_identity_on_generated_graph(self):
        g = generate_topology(TopologyParams(n=30, area_side=1000.0,
                                             radius=250.0, seed=5))
        assert graph_from_dict(graph_to_dict(g)) == g

    def test_file_round_trip(self, cg, tmp_path):
        path = tmp_path / "cg.json"
        save_graph(cg, path)
        assert load_graph(path) == cg

    def test_save_load_save_is_byte_stable(self, tmp_path):
        g = generate_topology(TopologyParams(n=12, area_side=100.0,
                                             radius=40.0, seed=9))
        first = dump_graph(g)
        again = dump_graph(graph_from_dict(json.loads(first)))
        assert first == again

    def test_undirected_file_lists_each_link_once(self, cg):
        data = graph_to_dict(cg)
        assert len(data["links"]) == 6

    def test_packaged_fixture_matches_builder(self, cg):
        from importlib import resources

        text = (
            resources.files("wmnroute") / "data" / "cg.json"
        ).read_text(encoding="utf-8")
        assert graph_from_dict(json.loads(text)) == cg
        assert dump_graph(cg) == text

    @given(st.integers(min_value=1, max_value=20), st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=200, deadline=None)
    def test_identity_on_random_graphs(self, n, seed):
        g = generate_topology(
            TopologyParams(n=n, area_side=500.0, radius=200.0, seed=seed)
        )
        assert graph_from_dict(graph_to_dict(g)) == g


class TestFormatErrors:
    def test_bad_version(self):
        with pytest.raises(GraphFormatError):
            graph_from_dict({"format_version": 99, "nodes": [], "links": []})

    def test_unknown_link_endpoint(self):
        with pytest.raises(GraphFormatError):
            graph_from_dict(
                {
                    "format_version": 1,
                    "nodes": [{"id": "a", "x": None, "y": None}],
                    "links": [{"from": "a", "to": "zz",
                               "rate_mbps": "1.0", "delay_ms": "1.0"}],
                }
            )

    def test_duplicate_node_id(self):
        with pytest.raises(GraphFormatError):
            graph_from_dict(
                {
                    "format_version": 1,
                    "nodes": [{"id": "a"}, {"id": "a"}],
                    "links": [],
                }
            )

    def test_partial_coordinates_rejected(self):
        with pytest.raises(GraphFormatError):
            graph_from_dict(
                {
                    "format_version": 1,
                    "nodes": [{"id": 0, "x": "1.0", "y": "2.0"}, {"id": 1}],
                    "links": [],
                }
            )

    def test_not_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        with pytest.raises(GraphFormatError):
            load_graph(bad)


class TestDotExport:
    def test_counts_without_route(self, cg):
        dot = export_dot(cg)
        assert dot.count("--") == 6
        for name in "uawbxy":
            assert f'"{name}"' in dot

    def test_route_highlight_marks_three_edges(self, cg):
        query = RouteQuery(cg.node_index("u"), cg.node_index("y"), 6.0)
        route = threshold_exact_route(cg, query).path
        dot = export_dot(cg, route=route)
        assert dot.count("penwidth") == 3

    def test_byte_identical_across_runs(self, cg):
        assert export_dot(cg) == export_dot(cg)

    def test_directed_graph_uses_arrows(self):
        g = Graph.from_links(2, [(0, 1, 1.0, 1.0)], undirected=False)
        dot = export_dot(g)
        assert "digraph" in dot and "->" in dot

    def test_positions_emitted(self):
        g = generate_topology(TopologyParams(n=5, area_side=100.0,
                                             radius=60.0, seed=2))
        assert 'pos="' in export_dot(g)
