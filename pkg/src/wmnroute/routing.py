"""Four dynamic-programming solvers for delay-bounded maximum-capacity routing.

All four maximise the bottleneck rate of the selected path while keeping
its end-to-end delay within an inclusive bound tau:

* :func:`route_dijkstra` — label setting: each round permanently picks the
  unvisited node with the best known rate (by a linear scan, so the cost
  is Theta(n^2)) and relaxes its incident links.
* :func:`route_bellman_ford` — label correcting: n-1 rounds, each relaxing
  every arc in storage order, cost Theta(n*L).
* :func:`route_floyd_warshall` — all-pairs intermediate-node recurrence,
  cost Theta(n^3).
* :func:`route_mra` — flooding-style table indexed by (node, exact path
  delay) on a fixed delay tick, extended one link per step.

The delay test is inclusive (``delay <= bound``): a path landing exactly
on the bound is accepted, and only strictly larger delays are pruned.

The single-label schemes are deliberately greedy: each node remembers one
(rate, delay, parent) triple, so a low-rate/low-delay detour that would
unlock a downstream node can be shadowed by a high-rate/high-delay label.
They are therefore heuristics for this objective; the exact solvers in
:mod:`wmnroute.oracle` adjudicate their answers, and disagreements are
reported rather than patched (see :mod:`wmnroute.bench`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from .errors import InvalidQueryError, NoPathError, QuantizationError
from .graph import (
    Graph,
    INFINITE_RATE,
    NodeId,
    Path,
    RouteQuery,
    RouteResult,
    path_delay,
    path_rate,
)

INF = math.inf

#: Relative tolerance when snapping delays onto the tick grid.
TICK_RTOL = 1e-9


@dataclass
class Label:
    """Best-known route to one node: rate, delay and the parent pointer."""

    rate: float = 0.0
    delay: float = INF
    parent: Optional[NodeId] = None
    visited: bool = False


@dataclass
class LabelTable:
    """Single-source solver state: one label per node.

    At termination every label with a finite delay respects the bound.
    """

    graph: Graph
    source: NodeId
    bound: float
    labels: list[Label]


@dataclass
class AllPairsTable:
    """All-pairs solver state: rate, delay and predecessor matrices.

    ``parent[i][j]`` is the node preceding ``j`` on the best known
    ``i -> j`` path (``None`` when no in-bound path is known).  Diagonal
    entries carry the trivial path: infinite rate, zero delay.
    """

    graph: Graph
    bound: float
    rate: list[list[float]]
    delay: list[list[float]]
    parent: list[list[Optional[NodeId]]]


class MraEntry(NamedTuple):
    rate: float
    nodes: tuple[NodeId, ...]


@dataclass
class MraTable:
    """Destination-fixed delay-indexed table.

    ``entries[d][u]`` is the best-rate simple path from ``u`` to the
    destination with total delay of exactly ``d`` ticks, or ``None``.
    """

    graph: Graph
    destination: NodeId
    bound: float
    tick: float
    bound_ticks: int
    entries: list[list[Optional[MraEntry]]]


Table = Union[LabelTable, AllPairsTable]


# ---------------------------------------------------------------------------
# label setting (Dijkstra-style)
# ---------------------------------------------------------------------------

def dijkstra_labels(graph: Graph, source: NodeId, bound: float) -> LabelTable:
    """Run the label-setting scheme from ``source`` under delay bound.

    Each of the n-1 rounds scans for the unvisited node with the maximum
    label rate (ties broken towards the smallest id), marks it visited,
    and relaxes its outgoing arcs: the candidate rate through ``u`` is
    ``min(label rate of u, link rate)`` and it replaces ``v``'s label when
    it is strictly better or ``v``'s current delay violates the bound.
    Extensions whose delay would exceed the bound additionally invalidate
    an out-of-bound label at the target, as a re-check.
    """
    _check_node(graph, source)
    labels = [Label() for _ in range(graph.n)]
    labels[source].rate = INFINITE_RATE
    labels[source].delay = 0.0
    for _ in range(graph.n - 1):
        u = -1
        best = -1.0
        for i, lab in enumerate(labels):
            if not lab.visited and lab.rate > best:
                best = lab.rate
                u = i
        if u < 0:
            break
        lab_u = labels[u]
        lab_u.visited = True
        for link in graph.arcs_from(u):
            ext_delay = lab_u.delay + link.delay
            lab_v = labels[link.v]
            if ext_delay <= bound:
                cap = link.rate if link.rate < lab_u.rate else lab_u.rate
                if cap > lab_v.rate or lab_v.delay > bound:
                    lab_v.rate = cap
                    lab_v.parent = u
                    lab_v.delay = ext_delay
            elif lab_v.delay > bound:
                lab_v.rate = 0.0
                lab_v.delay = INF
    return LabelTable(graph, source, bound, labels)


def route_dijkstra(graph: Graph, query: RouteQuery) -> RouteResult:
    """Label-setting route for one query."""
    query.validate(graph)
    if query.source == query.destination:
        return RouteResult.trivial(query.source)
    table = dijkstra_labels(graph, query.source, query.bound)
    return route_from_table(table, query)


# ---------------------------------------------------------------------------
# label correcting (Bellman-Ford-style)
# ---------------------------------------------------------------------------

def route_bellman_ford(graph: Graph, source: NodeId, bound: float) -> LabelTable:
    """Run the label-correcting scheme: n-1 rounds over every arc.

    Relaxation uses the same guard, candidate rate and replacement rule as
    the label-setting scheme, but visits all arcs per round in storage
    order with no greedy node selection, updating labels in place.  Each
    relaxation only needs the neighbour's label, which is what makes this
    scheme suitable for distributed operation.
    """
    _check_node(graph, source)
    labels = [Label() for _ in range(graph.n)]
    labels[source].rate = INFINITE_RATE
    labels[source].delay = 0.0
    for _ in range(graph.n - 1):
        for link in graph.links:
            lab_u = labels[link.u]
            lab_v = labels[link.v]
            ext_delay = lab_u.delay + link.delay
            if ext_delay <= bound:
                cap = link.rate if link.rate < lab_u.rate else lab_u.rate
                if cap > lab_v.rate or lab_v.delay > bound:
                    lab_v.rate = cap
                    lab_v.parent = link.u
                    lab_v.delay = ext_delay
            elif lab_v.delay > bound:
                lab_v.rate = 0.0
                lab_v.delay = INF
    return LabelTable(graph, source, bound, labels)


# ---------------------------------------------------------------------------
# all-pairs intermediate-node recurrence (Floyd-Warshall-style)
# ---------------------------------------------------------------------------

def route_floyd_warshall(graph: Graph, bound: float) -> AllPairsTable:
    """Build the all-pairs table under the delay bound.

    Round k allows node k as an intermediate: for every pair (i, j) the
    candidate rate via k is ``min(R[i][k], R[k][j])`` and its delay is the
    two legs' sum; it replaces the entry when it is strictly better or the
    current entry is out of bound.  Entries still out of bound at the end
    are cleared.  The inner loops are written out in plain Python on
    purpose, so the measured cost scales as the recurrence itself does.
    """
    n = graph.n
    rate = [[0.0] * n for _ in range(n)]
    delay = [[INF] * n for _ in range(n)]
    parent: list[list[Optional[NodeId]]] = [[None] * n for _ in range(n)]
    for i in range(n):
        rate[i][i] = INFINITE_RATE
        delay[i][i] = 0.0
    for link in graph.links:
        if 0 <= link.u < n and 0 <= link.v < n and link.u != link.v:
            rate[link.u][link.v] = link.rate
            delay[link.u][link.v] = link.delay
            parent[link.u][link.v] = link.u

    rng = range(n)
    for k in rng:
        rate_k = rate[k]
        delay_k = delay[k]
        parent_k = parent[k]
        for i in rng:
            rate_i = rate[i]
            r_ik = rate_i[k]
            if r_ik == 0.0:
                continue
            delay_i = delay[i]
            parent_i = parent[i]
            d_ik = delay_i[k]
            for j in rng:
                r_kj = rate_k[j]
                if r_kj == 0.0 or i == j:
                    continue
                d_sum = d_ik + delay_k[j]
                if d_sum <= bound:
                    cap = r_ik if r_ik < r_kj else r_kj
                    if cap > rate_i[j] or delay_i[j] > bound:
                        rate_i[j] = cap
                        delay_i[j] = d_sum
                        parent_i[j] = parent_k[j]
                elif delay_i[j] > bound:
                    rate_i[j] = 0.0
                    delay_i[j] = INF
                    parent_i[j] = None

    for i in rng:
        for j in rng:
            if i != j and (delay[i][j] > bound or rate[i][j] == 0.0):
                rate[i][j] = 0.0
                delay[i][j] = INF
                parent[i][j] = None
    return AllPairsTable(graph, bound, rate, delay, parent)


# ---------------------------------------------------------------------------
# delay-indexed flooding DP (MRA)
# ---------------------------------------------------------------------------

def default_tick(graph: Graph, bound: float) -> float:
    """Delay tick for :func:`route_mra`: the GCD of all link delays and
    the bound when they are rationals with small denominators, else 1 ms.

    The table is indexed by exact path delay, which forces a common grid.
    """
    from fractions import Fraction

    values = [link.delay for link in graph.links if link.delay > 0]
    if bound > 0:
        values.append(bound)
    if not values:
        return 1.0
    fracs = []
    for v in values:
        f = Fraction(v).limit_denominator(10**6)
        if abs(float(f) - v) > TICK_RTOL * max(1.0, abs(v)):
            return 1.0
        fracs.append(f)
    g = fracs[0]
    for f in fracs[1:]:
        g = Fraction(math.gcd(g.numerator * f.denominator,
                              f.numerator * g.denominator),
                     g.denominator * f.denominator)
    return float(g)


def _to_ticks(value: float, tick: float, what: str) -> int:
    ratio = value / tick
    ticks = round(ratio)
    if abs(value - ticks * tick) > TICK_RTOL * max(1.0, abs(value)):
        raise QuantizationError(
            f"{what} {value} ms is not an integer multiple of tick {tick} ms"
        )
    return ticks


def mra_table(
    graph: Graph, destination: NodeId, bound: float, tick: float
) -> MraTable:
    """Build the destination-fixed delay-indexed table.

    Level d of the table holds, per node, the best simple path to the
    destination whose delay is exactly d ticks.  Levels fill in ascending
    delay: single links seed their exact level, then each level extends
    lower-level paths by one link, keeping the better rate.  Extensions
    that would revisit a node are skipped so stored paths stay simple.
    A zero-delay link extends within its own level, so each level loops
    until it stops changing.
    """
    _check_node(graph, destination)
    if tick <= 0:
        raise QuantizationError(f"tick must be > 0, got {tick}")
    bound_ticks = _to_ticks(bound, tick, "delay bound")
    arc_ticks = [_to_ticks(link.delay, tick, "link delay") for link in graph.links]

    entries: list[list[Optional[MraEntry]]] = [
        [None] * graph.n for _ in range(bound_ticks + 1)
    ]
    for link, t in zip(graph.links, arc_ticks):
        if link.v == destination and t <= bound_ticks:
            cur = entries[t][link.u]
            if cur is None or link.rate > cur.rate:
                entries[t][link.u] = MraEntry(link.rate, (link.u, destination))

    for d in range(1, bound_ticks + 1):
        level = entries[d]
        changed = True
        while changed:
            changed = False
            for u in range(graph.n):
                for idx in graph.adjacency[u]:
                    link = graph.links[idx]
                    t = arc_ticks[idx]
                    if not d > t:
                        continue
                    suffix = entries[d - t][link.v]
                    if suffix is None or u in suffix.nodes:
                        continue
                    cand = link.rate if link.rate < suffix.rate else suffix.rate
                    cur = level[u]
                    if cur is None or cand > cur.rate:
                        level[u] = MraEntry(cand, (u,) + suffix.nodes)
                        changed = True
    return MraTable(graph, destination, bound, tick, bound_ticks, entries)


def route_mra(
    graph: Graph,
    query: RouteQuery,
    tick: Optional[float] = None,
    *,
    exact_delay: bool = False,
) -> RouteResult:
    """Delay-indexed route for one query.

    By default the answer is the best-rate entry over all delay levels up
    to the bound.  With ``exact_delay=True`` only the level exactly at the
    bound qualifies, reproducing the fixed-delay reading of the
    recurrence.
    """
    query.validate(graph)
    if query.source == query.destination:
        return RouteResult.trivial(query.source)
    if tick is None:
        tick = default_tick(graph, query.bound)
    table = mra_table(graph, query.destination, query.bound, tick)

    best: Optional[MraEntry] = None
    if exact_delay:
        best = table.entries[table.bound_ticks][query.source]
    else:
        for level in table.entries:
            entry = level[query.source]
            if entry is not None and (best is None or entry.rate > best.rate):
                best = entry
    if best is None:
        return RouteResult.infeasible()
    path = Path.from_nodes(graph, best.nodes)
    return RouteResult.found(path, path_rate(path, graph), path_delay(path, graph))


# ---------------------------------------------------------------------------
# path reconstruction
# ---------------------------------------------------------------------------

def extract_path(table: Table, source: NodeId, destination: NodeId) -> Path:
    """Walk parent pointers from destination back to source.

    Raises :class:`NoPathError` when the chain is absent, or with
    ``cyclic=True`` when it loops (which would indicate a solver bug).
    """
    graph = table.graph
    _check_node(graph, source)
    _check_node(graph, destination)
    if isinstance(table, LabelTable) and table.source != source:
        raise InvalidQueryError(
            f"table was computed for source {table.source}, not {source}"
        )
    if source == destination:
        return Path.trivial(source)

    if isinstance(table, LabelTable):
        def parent_of(node: NodeId) -> Optional[NodeId]:
            return table.labels[node].parent
    else:
        def parent_of(node: NodeId) -> Optional[NodeId]:
            return table.parent[source][node]

    nodes = [destination]
    seen = {destination}
    t = destination
    while t != source:
        p = parent_of(t)
        if p is None:
            raise NoPathError(f"no parent chain from {destination} to {source}")
        if p in seen:
            raise NoPathError(
                f"parent chain from {destination} loops at {p}", cyclic=True
            )
        nodes.append(p)
        seen.add(p)
        t = p
    nodes.reverse()
    return Path.from_nodes(graph, nodes)


def route_from_table(table: Table, query: RouteQuery) -> RouteResult:
    """Extract one query's result from a solver table.

    The reported rate and delay are recomputed from the reconstructed
    path's links, and the result is Found only when that delay respects
    the bound; this keeps results self-consistent even if intermediate
    labels went stale during the run.
    """
    query.validate(graph := table.graph)
    if query.source == query.destination:
        return RouteResult.trivial(query.source)
    if isinstance(table, AllPairsTable):
        if (
            table.rate[query.source][query.destination] == 0.0
            or table.delay[query.source][query.destination] == INF
        ):
            return RouteResult.infeasible()
    try:
        path = extract_path(table, query.source, query.destination)
    except NoPathError as exc:
        if exc.cyclic:
            raise
        return RouteResult.infeasible()
    delay = path_delay(path, graph)
    if delay > query.bound:
        return RouteResult.infeasible()
    return RouteResult.found(path, path_rate(path, graph), delay)


def _check_node(graph: Graph, node: NodeId) -> None:
    if not 0 <= node < graph.n:
        raise InvalidQueryError(f"node {node} out of range [0, {graph.n})")
