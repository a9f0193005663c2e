"""Independent exact solvers used as ground truth for the DP algorithms.

Two oracles with deliberately different structure, so a shared bug cannot
validate itself:

* :func:`brute_force_route` enumerates every simple path within the delay
  bound (exponential, budgeted, small graphs only);
* :func:`threshold_exact_route` decomposes by bottleneck threshold: for a
  candidate rate r, the query is feasible iff the minimum-delay path using
  only links of rate >= r meets the bound; feasibility is monotone in r,
  so a binary search over the distinct link rates finds the optimum.
"""

from __future__ import annotations

import heapq
from typing import Optional

from .errors import BudgetExceededError
from .graph import (
    Graph,
    INFINITE_RATE,
    Path,
    RouteQuery,
    RouteResult,
    path_delay,
    path_rate,
)


def canonical_graph() -> Graph:
    """Six-node undirected reference graph used across the test suite.

    Every link has a 2 ms delay; rates are chosen so the best u-to-y route
    within a 6 ms bound is u-a-w-y at 5 Mbps (the alternative u-b-x-y
    bottlenecks at 3 Mbps on its final hop).
    """
    names = ("u", "a", "w", "b", "x", "y")
    ix = {name: i for i, name in enumerate(names)}
    links = [
        (ix["u"], ix["a"], 5.0, 2.0),
        (ix["a"], ix["w"], 7.0, 2.0),
        (ix["w"], ix["y"], 6.0, 2.0),
        (ix["u"], ix["b"], 9.0, 2.0),
        (ix["b"], ix["x"], 8.0, 2.0),
        (ix["x"], ix["y"], 3.0, 2.0),
    ]
    return Graph.from_links(6, links, undirected=True, names=names)


def _better(cand: tuple, best: Optional[tuple]) -> bool:
    # candidate/best: (rate, delay, hops, nodes); maximise rate, then
    # minimise delay, hops, and finally the node sequence itself.
    if best is None:
        return True
    if cand[0] != best[0]:
        return cand[0] > best[0]
    return cand[1:] < best[1:]


def brute_force_route(
    graph: Graph,
    query: RouteQuery,
    *,
    max_nodes: int = 14,
    max_expansions: int = 10_000_000,
) -> RouteResult:
    """Exhaustive optimum by depth-first enumeration of simple paths.

    Prunes only on the delay bound, so the best surviving path is provably
    optimal.  Ties break towards lower delay, then fewer hops, then the
    lexicographically smallest node sequence.  Raises
    :class:`BudgetExceededError` when the graph exceeds ``max_nodes`` or
    the search exceeds ``max_expansions`` partial paths.
    """
    query.validate(graph)
    if graph.n > max_nodes:
        raise BudgetExceededError(
            f"{graph.n} nodes exceed the enumeration budget of {max_nodes}"
        )
    if query.source == query.destination:
        return RouteResult.trivial(query.source)

    best: Optional[tuple] = None
    on_path = [False] * graph.n
    on_path[query.source] = True
    stack = [query.source]
    expansions = 0

    def dfs(u: int, rate: float, delay: float) -> None:
        nonlocal best, expansions
        for link in graph.arcs_from(u):
            v = link.v
            if on_path[v]:
                continue
            new_delay = delay + link.delay
            if new_delay > query.bound:
                continue
            expansions += 1
            if expansions > max_expansions:
                raise BudgetExceededError(
                    f"enumeration exceeded {max_expansions} partial paths"
                )
            new_rate = link.rate if link.rate < rate else rate
            if v == query.destination:
                cand = (new_rate, new_delay, len(stack), tuple(stack) + (v,))
                if _better(cand, best):
                    best = cand
                continue
            on_path[v] = True
            stack.append(v)
            dfs(v, new_rate, new_delay)
            stack.pop()
            on_path[v] = False

    dfs(query.source, INFINITE_RATE, 0.0)
    if best is None:
        return RouteResult.infeasible()
    rate, delay, _, nodes = best
    return RouteResult.found(Path.from_nodes(graph, nodes), rate, delay)


def _min_delay(
    graph: Graph, source: int, destination: int, bound: float, min_rate: float
) -> Optional[Path]:
    """Minimum-delay path using only links of rate >= min_rate, or None
    when the best delay exceeds the bound."""
    dist = [None] * graph.n  # type: list[Optional[float]]
    parent: list[Optional[int]] = [None] * graph.n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d != dist[u]:
            continue
        if u == destination:
            break
        for link in graph.arcs_from(u):
            if link.rate < min_rate:
                continue
            v = link.v
            nd = d + link.delay
            if nd > bound:
                continue
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
    if dist[destination] is None:
        return None
    nodes = [destination]
    while nodes[-1] != source:
        nodes.append(parent[nodes[-1]])
    nodes.reverse()
    return Path.from_nodes(graph, nodes)


def threshold_exact_route(graph: Graph, query: RouteQuery) -> RouteResult:
    """Exact optimum by bottleneck-threshold decomposition.

    Feasibility of "minimum delay <= bound on the rate->=r subgraph" is
    non-increasing in r, so a binary search over the sorted distinct link
    rates finds the greatest feasible threshold; the minimum-delay path at
    that threshold is an optimal answer.
    """
    query.validate(graph)
    if query.source == query.destination:
        return RouteResult.trivial(query.source)

    rates = sorted({link.rate for link in graph.links}, reverse=True)
    if not rates:
        return RouteResult.infeasible()

    cache: dict[int, Optional[Path]] = {}

    def feasible(idx: int) -> Optional[Path]:
        if idx not in cache:
            cache[idx] = _min_delay(
                graph, query.source, query.destination, query.bound, rates[idx]
            )
        return cache[idx]

    lo, hi = 0, len(rates) - 1
    if feasible(hi) is None:
        return RouteResult.infeasible()
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid) is not None:
            hi = mid
        else:
            lo = mid + 1
    path = feasible(lo)
    assert path is not None
    return RouteResult.found(path, path_rate(path, graph), path_delay(path, graph))
