"""Graph, link and path primitives shared by every routing algorithm.

A path is scored by two metrics: its rate (the minimum link rate along it,
in Mbps) and its delay (the sum of link delays, in ms).  All solvers in
this package maximise the rate subject to an upper bound on the delay.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable, Iterator, Optional, Sequence, Union

from .errors import (
    InvalidPathError,
    InvalidQueryError,
    LinkMismatchError,
    PathCycleError,
)

log = logging.getLogger(__name__)

NodeId = int

#: Rate sentinel for the empty (single-node) path.  Ordinary float ordering
#: applies; no real link may carry it.
INFINITE_RATE = math.inf


@dataclass(frozen=True)
class Link:
    """One directed arc ``u -> v`` with rate in Mbps and delay in ms."""

    u: NodeId
    v: NodeId
    rate: float
    delay: float

    def reversed(self) -> "Link":
        return Link(self.v, self.u, self.rate, self.delay)


@dataclass(frozen=True)
class Graph:
    """Immutable routing graph over dense integer node ids ``0 .. n-1``.

    ``links`` holds directed arcs.  An undirected graph stores each
    physical link as two arcs with identical rate and delay (the reverse
    arc directly follows the forward one).  ``names`` optionally keeps the
    original node labels from an input file; ``positions`` optionally keeps
    per-node coordinates in metres.
    """

    n: int
    links: tuple[Link, ...]
    undirected: bool = True
    positions: Optional[tuple[tuple[float, float], ...]] = None
    names: Optional[tuple[Hashable, ...]] = None
    adjacency: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for idx, link in enumerate(self.links):
            if 0 <= link.u < self.n:
                out[link.u].append(idx)
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in out))

    @classmethod
    def from_links(
        cls,
        n: int,
        links: Iterable[Union[Link, tuple]],
        *,
        undirected: bool = True,
        positions: Optional[Sequence[tuple[float, float]]] = None,
        names: Optional[Sequence[Hashable]] = None,
    ) -> "Graph":
        """Build a graph from physical links, deduplicating parallel ones.

        When two links join the same node pair, the one with the greater
        rate wins (first occurrence wins a tie); the drop is logged.  For
        undirected graphs each kept link expands to a forward/reverse arc
        pair in input order.
        """
        kept: dict[tuple[NodeId, NodeId], Link] = {}
        order: list[tuple[NodeId, NodeId]] = []
        for item in links:
            link = item if isinstance(item, Link) else Link(*item)
            key = (link.u, link.v)
            if undirected and link.u > link.v:
                key = (link.v, link.u)
            old = kept.get(key)
            if old is None:
                kept[key] = link
                order.append(key)
            elif link.rate > old.rate:
                log.warning(
                    "dropping parallel link %s-%s (rate %g) for rate %g",
                    old.u, old.v, old.rate, link.rate,
                )
                kept[key] = link
            else:
                log.warning(
                    "dropping parallel link %s-%s (rate %g); keeping rate %g",
                    link.u, link.v, link.rate, old.rate,
                )
        arcs: list[Link] = []
        for key in order:
            link = kept[key]
            arcs.append(link)
            if undirected:
                arcs.append(link.reversed())
        return cls(
            n=n,
            links=tuple(arcs),
            undirected=undirected,
            positions=tuple((float(x), float(y)) for x, y in positions)
            if positions is not None
            else None,
            names=tuple(names) if names is not None else None,
        )

    # -- node label helpers -------------------------------------------------

    def node_name(self, i: NodeId) -> Hashable:
        return self.names[i] if self.names is not None else i

    def node_index(self, label: Hashable) -> NodeId:
        """Resolve a node label (or a plain index) to a dense id."""
        if self.names is not None:
            try:
                return self.names.index(label)
            except ValueError:
                pass
            # fall through: allow addressing named nodes by position too
        try:
            idx = int(label)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            raise InvalidQueryError(f"unknown node {label!r}") from None
        if not 0 <= idx < self.n:
            raise InvalidQueryError(f"node index {idx} out of range [0, {self.n})")
        return idx

    # -- link helpers -------------------------------------------------------

    def arcs_from(self, u: NodeId) -> Iterator[Link]:
        for idx in self.adjacency[u]:
            yield self.links[idx]

    def arc(self, u: NodeId, v: NodeId) -> Optional[Link]:
        for idx in self.adjacency[u]:
            link = self.links[idx]
            if link.v == v:
                return link
        return None

    def physical_links(self) -> list[Link]:
        """Each physical link once, in storage order (arcs collapse to one)."""
        if not self.undirected:
            return list(self.links)
        seen: set[tuple[NodeId, NodeId]] = set()
        out = []
        for link in self.links:
            key = (min(link.u, link.v), max(link.u, link.v))
            if key not in seen:
                seen.add(key)
                out.append(link)
        return out

    @property
    def link_count(self) -> int:
        """Number of physical links (arc pairs count once when undirected)."""
        return len(self.physical_links())


@dataclass(frozen=True)
class Path:
    """A simple path: ordered nodes plus the traversed links."""

    nodes: tuple[NodeId, ...]
    links: tuple[Link, ...]

    @classmethod
    def trivial(cls, node: NodeId) -> "Path":
        return cls((node,), ())

    @classmethod
    def from_nodes(cls, graph: Graph, nodes: Sequence[NodeId]) -> "Path":
        """Resolve a node sequence against the graph, validating it."""
        nodes = tuple(nodes)
        if not nodes:
            raise InvalidPathError("a path needs at least one node")
        if len(set(nodes)) != len(nodes):
            raise InvalidPathError(f"path revisits a node: {nodes}")
        for u in nodes:
            if not 0 <= u < graph.n:
                raise InvalidPathError(f"node {u} out of range [0, {graph.n})")
        links = []
        for u, v in zip(nodes, nodes[1:]):
            link = graph.arc(u, v)
            if link is None:
                raise InvalidPathError(f"no link {u} -> {v}")
            links.append(link)
        return cls(nodes, tuple(links))

    def __len__(self) -> int:
        return len(self.nodes)


PathLike = Union[Path, Sequence[NodeId]]


def _resolve(path: PathLike, graph: Graph) -> Path:
    if isinstance(path, Path):
        return Path.from_nodes(graph, path.nodes)
    return Path.from_nodes(graph, path)


def path_rate(path: PathLike, graph: Graph) -> float:
    """Bottleneck rate of a path: the minimum link rate along it.

    A single-node path has no links and gets the ``INFINITE_RATE``
    sentinel.
    """
    resolved = _resolve(path, graph)
    if not resolved.links:
        return INFINITE_RATE
    return min(link.rate for link in resolved.links)


def path_delay(path: PathLike, graph: Graph) -> float:
    """End-to-end delay of a path: the left-to-right sum of link delays."""
    resolved = _resolve(path, graph)
    total = 0.0
    for link in resolved.links:
        total += link.delay
    return total


def path_concat(prefix: Path, link: Link) -> Path:
    """Extend ``prefix`` by one link, preserving simplicity.

    The new rate is ``min(old rate, link.rate)`` and the new delay is
    ``old delay + link.delay``.
    """
    if link.u != prefix.nodes[-1]:
        raise LinkMismatchError(
            f"link tail {link.u} does not match path head {prefix.nodes[-1]}"
        )
    if link.v in prefix.nodes:
        raise PathCycleError(f"extending with {link.u}->{link.v} revisits {link.v}")
    return Path(prefix.nodes + (link.v,), prefix.links + (link,))


class RouteStatus(Enum):
    FOUND = "found"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class RouteQuery:
    """Source, destination and the inclusive end-to-end delay bound (ms)."""

    source: NodeId
    destination: NodeId
    bound: float

    def __post_init__(self) -> None:
        if not (self.bound >= 0):
            raise InvalidQueryError(f"delay bound must be >= 0, got {self.bound}")

    def validate(self, graph: Graph) -> None:
        for node in (self.source, self.destination):
            if not 0 <= node < graph.n:
                raise InvalidQueryError(
                    f"node {node} out of range [0, {graph.n})"
                )


@dataclass(frozen=True)
class RouteResult:
    """Outcome of a routing query.

    For a found route, ``rate`` equals the minimum traversed link rate and
    ``delay`` the sum of traversed link delays, with ``delay`` within the
    query bound.  A source-equals-destination query yields the trivial
    path with the infinite-rate sentinel and zero delay.
    """

    status: RouteStatus
    path: Optional[Path]
    rate: float
    delay: float

    @classmethod
    def found(cls, path: Path, rate: float, delay: float) -> "RouteResult":
        return cls(RouteStatus.FOUND, path, rate, delay)

    @classmethod
    def trivial(cls, node: NodeId) -> "RouteResult":
        return cls(RouteStatus.FOUND, Path.trivial(node), INFINITE_RATE, 0.0)

    @classmethod
    def infeasible(cls) -> "RouteResult":
        return cls(RouteStatus.INFEASIBLE, None, 0.0, math.inf)

    @property
    def is_found(self) -> bool:
        return self.status is RouteStatus.FOUND


def validate_graph(graph: Graph) -> list[str]:
    """Check structural invariants, returning one message per violation.

    An empty list means the graph is valid.  Diagnoses bad endpoints,
    non-positive or non-finite rates, negative delays, missing or
    asymmetric reverse arcs on undirected graphs, duplicate arcs, and
    metadata length mismatches.
    """
    problems: list[str] = []
    if graph.n < 0:
        problems.append(f"negative node count {graph.n}")
    if graph.positions is not None and len(graph.positions) != graph.n:
        problems.append(
            f"{len(graph.positions)} positions for {graph.n} nodes"
        )
    if graph.names is not None:
        if len(graph.names) != graph.n:
            problems.append(f"{len(graph.names)} names for {graph.n} nodes")
        elif len(set(graph.names)) != graph.n:
            problems.append("node names are not unique")

    seen: dict[tuple[NodeId, NodeId], Link] = {}
    for idx, link in enumerate(graph.links):
        where = f"arc #{idx} ({link.u}->{link.v})"
        if not (0 <= link.u < graph.n and 0 <= link.v < graph.n):
            problems.append(f"{where}: endpoint out of range")
            continue
        if link.u == link.v:
            problems.append(f"{where}: self-loop")
        if not (link.rate > 0) or math.isinf(link.rate):
            problems.append(f"{where}: rate must be finite and > 0, got {link.rate}")
        if not (link.delay >= 0) or math.isinf(link.delay):
            problems.append(
                f"{where}: delay must be finite and >= 0, got {link.delay}"
            )
        key = (link.u, link.v)
        if key in seen:
            problems.append(f"{where}: duplicate arc")
        else:
            seen[key] = link

    if graph.undirected:
        for (u, v), link in seen.items():
            rev = seen.get((v, u))
            if rev is None:
                problems.append(f"arc {u}->{v}: missing reverse arc")
            elif rev.rate != link.rate or rev.delay != link.delay:
                problems.append(
                    f"arc {u}->{v}: reverse arc attributes differ "
                    f"({link.rate}/{link.delay} vs {rev.rate}/{rev.delay})"
                )

    expected: list[list[int]] = [[] for _ in range(max(graph.n, 0))]
    for idx, link in enumerate(graph.links):
        if 0 <= link.u < graph.n:
            expected[link.u].append(idx)
    if tuple(tuple(a) for a in expected) != graph.adjacency:
        problems.append("adjacency index inconsistent with link sequence")
    return problems
