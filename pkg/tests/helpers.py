"""Shared fixtures and corpus generators for the test suite."""

from __future__ import annotations

from wmnroute.bench import radius_for_expected_degree
from wmnroute.graph import Graph, RouteQuery
from wmnroute.rng import Xoshiro256PlusPlus
from wmnroute.topology import TopologyParams, ValueModel, generate_topology

#: tau values cycled through by the random corpora (ms)
TAU_CYCLE = tuple(float(t) for t in range(4, 21, 2))


def corpus_instance(
    seed: int,
    *,
    n_range: tuple[int, int] = (4, 10),
    rate_model: ValueModel = ValueModel.uniform(1.0, 10.0),
    delay_model: ValueModel = ValueModel.constant(2.0),
    expected_degree: float = 8.0,
) -> tuple[Graph, RouteQuery, float]:
    """Deterministic random instance #seed: a graph, a query and its tau."""
    lo, hi = n_range
    n = lo + seed % (hi - lo + 1)
    params = TopologyParams(
        n=n,
        area_side=1000.0,
        radius=radius_for_expected_degree(n, 1000.0, expected_degree),
        seed=seed,
        rate_model=rate_model,
        delay_model=delay_model,
    )
    graph = generate_topology(params)
    picker = Xoshiro256PlusPlus(seed ^ 0x9D2C5680)
    src = picker.randrange(n)
    dst = picker.randrange(n)
    tau = TAU_CYCLE[seed % len(TAU_CYCLE)]
    return graph, RouteQuery(src, dst, tau), tau


def divergence_graph() -> tuple[Graph, RouteQuery]:
    """Hand-built instance where the greedy label schemes miss the optimum.

    The high-rate detour s-c-d-m (rate 10, 6 ms) shadows the low-rate
    short path s-a-m (rate 3, 4 ms) in every single-label table, so m's
    label arrives with 6 ms on the books and the final hop m-t cannot fit
    inside an 6 ms bound; the true optimum s-a-m-t (rate 3, 6 ms) is
    missed.  Brute force and the threshold oracle both find it, which
    makes this the standard fixture for the counterexample machinery.
    """
    names = ("s", "c", "d", "a", "m", "t")
    ix = {name: i for i, name in enumerate(names)}
    links = [
        (ix["s"], ix["c"], 10.0, 2.0),
        (ix["c"], ix["d"], 10.0, 2.0),
        (ix["d"], ix["m"], 10.0, 2.0),
        (ix["s"], ix["a"], 3.0, 2.0),
        (ix["a"], ix["m"], 3.0, 2.0),
        (ix["m"], ix["t"], 10.0, 2.0),
    ]
    graph = Graph.from_links(6, links, undirected=True, names=names)
    return graph, RouteQuery(ix["s"], ix["t"], 6.0)
