"""Graph file format (JSON) and DOT export.

The JSON layout::

    {
      "format_version": 1,
      "directed": false,
      "generator": {...} | null,
      "nodes": [{"id": "u", "x": "12.5", "y": "3.0"}, ...],
      "links": [{"from": "u", "to": "a", "rate_mbps": "5.0", "delay_ms": "2.0"}]
    }

Rates, delays and coordinates are serialized as decimal strings (Python's
shortest round-trip ``repr``) so files are byte-stable across platforms
and reload to the exact same doubles.  Undirected files list each physical
link once.  Node ids may be arbitrary strings or integers; loading assigns
dense indices in node-list order and keeps the originals as names.
"""

from __future__ import annotations

import json
from typing import Optional, Union

from .errors import GraphFormatError
from .graph import Graph, Link, Path

FORMAT_VERSION = 1


def _num(value: float) -> str:
    return repr(float(value))


def _parse_num(value, what: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise GraphFormatError(f"bad numeric value for {what}: {value!r}") from None


def graph_to_dict(graph: Graph, *, generator: Optional[dict] = None) -> dict:
    nodes = []
    for i in range(graph.n):
        x = y = None
        if graph.positions is not None:
            x, y = graph.positions[i]
        nodes.append(
            {
                "id": graph.node_name(i),
                "x": _num(x) if x is not None else None,
                "y": _num(y) if y is not None else None,
            }
        )
    links = []
    for link in graph.physical_links():
        links.append(
            {
                "from": graph.node_name(link.u),
                "to": graph.node_name(link.v),
                "rate_mbps": _num(link.rate),
                "delay_ms": _num(link.delay),
            }
        )
    return {
        "format_version": FORMAT_VERSION,
        "directed": not graph.undirected,
        "generator": generator,
        "nodes": nodes,
        "links": links,
    }


def graph_from_dict(data: dict) -> Graph:
    if not isinstance(data, dict):
        raise GraphFormatError("graph file must hold a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise GraphFormatError(f"unsupported format_version {version!r}")
    directed = bool(data.get("directed", False))

    raw_nodes = data.get("nodes")
    raw_links = data.get("links")
    if not isinstance(raw_nodes, list) or not isinstance(raw_links, list):
        raise GraphFormatError("graph file needs 'nodes' and 'links' lists")

    names = []
    index: dict = {}
    positions = []
    have_pos = 0
    for entry in raw_nodes:
        node_id = entry.get("id")
        if node_id is None:
            raise GraphFormatError("node without an 'id'")
        if node_id in index:
            raise GraphFormatError(f"duplicate node id {node_id!r}")
        index[node_id] = len(names)
        names.append(node_id)
        x, y = entry.get("x"), entry.get("y")
        if x is not None and y is not None:
            positions.append((_parse_num(x, "x"), _parse_num(y, "y")))
            have_pos += 1
        else:
            positions.append(None)
    if have_pos not in (0, len(names)):
        raise GraphFormatError("either all nodes carry coordinates or none")
    # identity integer labels carry no information; canonicalise them away
    # so a generated graph survives save/load structurally unchanged
    kept_names = None if names == list(range(len(names))) else names

    links = []
    for entry in raw_links:
        try:
            u = index[entry["from"]]
            v = index[entry["to"]]
        except KeyError as exc:
            raise GraphFormatError(f"link references unknown node {exc}") from None
        links.append(
            Link(
                u,
                v,
                _parse_num(entry.get("rate_mbps"), "rate_mbps"),
                _parse_num(entry.get("delay_ms"), "delay_ms"),
            )
        )
    return Graph.from_links(
        len(names),
        links,
        undirected=not directed,
        positions=positions if have_pos else None,
        names=kept_names,
    )


def dump_graph(graph: Graph, *, generator: Optional[dict] = None) -> str:
    """Serialize to the canonical byte-stable JSON text."""
    return (
        json.dumps(graph_to_dict(graph, generator=generator), indent=2)
        + "\n"
    )


def save_graph(graph: Graph, path, *, generator: Optional[dict] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(graph, generator=generator))


def load_graph(source: Union[str, "os.PathLike"]) -> Graph:
    with open(source, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"not valid JSON: {exc}") from None
    return graph_from_dict(data)


def load_generator_header(source) -> Optional[dict]:
    with open(source, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return data.get("generator")


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

def _dot_id(name) -> str:
    text = str(name)
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def export_dot(graph: Graph, *, route: Optional[Path] = None) -> str:
    """Render the graph as deterministic DOT text.

    Edges carry rate/delay labels; when ``route`` is given, its links (and
    nodes) get a highlight attribute.  Output depends only on the graph
    and route, so repeated exports are byte-identical.
    """
    on_route_nodes = set(route.nodes) if route is not None else set()
    route_edges = set()
    if route is not None:
        for link in route.links:
            key = (link.u, link.v)
            if graph.undirected:
                key = (min(key), max(key))
            route_edges.add(key)

    kind, sep = ("graph", "--") if graph.undirected else ("digraph", "->")
    lines = [f"{kind} wmn {{"]
    lines.append("  node [shape=circle fontsize=10];")
    for i in range(graph.n):
        attrs = []
        if graph.positions is not None:
            x, y = graph.positions[i]
            attrs.append(f'pos="{x!r},{y!r}!"')
        if i in on_route_nodes:
            attrs.append("color=red")
        suffix = f" [{' '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_id(graph.node_name(i))}{suffix};")
    for link in graph.physical_links():
        key = (link.u, link.v)
        if graph.undirected:
            key = (min(key), max(key))
        attrs = [f'label="{link.rate!r} Mbps, {link.delay!r} ms"']
        if key in route_edges:
            attrs.append("color=red penwidth=2.5")
        lines.append(
            f"  {_dot_id(graph.node_name(link.u))} {sep} "
            f"{_dot_id(graph.node_name(link.v))} [{' '.join(attrs)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_dot(graph: Graph, path, *, route: Optional[Path] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_dot(graph, route=route))
