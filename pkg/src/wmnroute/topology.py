"""Random geometric topology generation for wireless-mesh-style graphs.

Nodes are placed uniformly at random on a square; two nodes get an
undirected link iff their Euclidean distance is within the coverage
radius.  Link rates and delays come from configurable per-link models.
Generation is a pure function of the parameters: the PRNG is pinned (see
:mod:`wmnroute.rng`) and the draw order is fixed:

1. per node ``i = 0 .. n-1``: draw ``x`` then ``y``, each uniform on
   ``[0, area_side)``;
2. per pair ``(i, j)`` with ``i < j`` in lexicographic order, and only if
   the pair is within radius: draw the rate, then the delay.

A ``constant`` model consumes no draws; a ``uniform`` model consumes
exactly one per sampled value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidParamsError
from .graph import Graph, NodeId
from .rng import Xoshiro256PlusPlus


@dataclass(frozen=True)
class ValueModel:
    """Per-link value model: ``constant`` c, or ``uniform`` on [lo, hi)."""

    kind: str
    a: float
    b: Optional[float] = None

    @classmethod
    def constant(cls, value: float) -> "ValueModel":
        return cls("constant", float(value))

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "ValueModel":
        return cls("uniform", float(lo), float(hi))

    @classmethod
    def parse(cls, text: str) -> "ValueModel":
        """Parse ``"constant:2"``, ``"const:2"`` or ``"uniform:1,10"``."""
        kind, _, rest = text.partition(":")
        kind = kind.strip().lower()
        try:
            if kind in ("constant", "const"):
                return cls.constant(float(rest))
            if kind == "uniform":
                lo_s, hi_s = rest.split(",")
                return cls.uniform(float(lo_s), float(hi_s))
        except ValueError as exc:
            raise InvalidParamsError(f"bad value model {text!r}: {exc}") from None
        raise InvalidParamsError(f"unknown value model kind {kind!r}")

    def sample(self, rng: Xoshiro256PlusPlus) -> float:
        if self.kind == "constant":
            return self.a
        return rng.uniform(self.a, self.b)  # type: ignore[arg-type]

    def check(self, *, positive: bool, what: str) -> None:
        if self.kind == "constant":
            lo = self.a
        elif self.kind == "uniform":
            if self.b is None or not self.a < self.b:
                raise InvalidParamsError(
                    f"{what}: uniform bounds need lo < hi, got {self.a}, {self.b}"
                )
            lo = self.a
        else:
            raise InvalidParamsError(f"{what}: unknown model kind {self.kind!r}")
        if positive and not lo > 0:
            raise InvalidParamsError(f"{what}: values must be > 0, got lo={lo}")
        if not positive and not lo >= 0:
            raise InvalidParamsError(f"{what}: values must be >= 0, got lo={lo}")

    def spec(self) -> str:
        """Canonical text form (inverse of :meth:`parse`)."""
        if self.kind == "constant":
            return f"constant:{self.a!r}"
        return f"uniform:{self.a!r},{self.b!r}"


DEFAULT_RATE_MODEL = ValueModel.uniform(1.0, 10.0)
DEFAULT_DELAY_MODEL = ValueModel.constant(2.0)


@dataclass(frozen=True)
class TopologyParams:
    """Parameters of one generated topology (all lengths in metres)."""

    n: int
    area_side: float
    radius: float
    seed: int
    rate_model: ValueModel = DEFAULT_RATE_MODEL
    delay_model: ValueModel = DEFAULT_DELAY_MODEL

    def validate(self) -> None:
        if self.n < 1:
            raise InvalidParamsError(f"n must be >= 1, got {self.n}")
        if not self.area_side > 0:
            raise InvalidParamsError(f"area_side must be > 0, got {self.area_side}")
        if not self.radius > 0:
            raise InvalidParamsError(f"radius must be > 0, got {self.radius}")
        self.rate_model.check(positive=True, what="rate model")
        self.delay_model.check(positive=False, what="delay model")


def generate_topology(params: TopologyParams) -> Graph:
    """Generate the random geometric graph described by ``params``.

    Same params, same graph, bit for bit.  The membership test compares
    squared distances (multiplications only) so it is exactly reproducible
    in IEEE-754 double arithmetic.
    """
    params.validate()
    rng = Xoshiro256PlusPlus(params.seed)
    side = float(params.area_side)
    positions = []
    for _ in range(params.n):
        x = rng.uniform(0.0, side)
        y = rng.uniform(0.0, side)
        positions.append((x, y))

    r2 = float(params.radius) * float(params.radius)
    links = []
    for i in range(params.n):
        xi, yi = positions[i]
        for j in range(i + 1, params.n):
            dx = xi - positions[j][0]
            dy = yi - positions[j][1]
            if dx * dx + dy * dy <= r2:
                rate = params.rate_model.sample(rng)
                delay = params.delay_model.sample(rng)
                links.append((i, j, rate, delay))
    return Graph.from_links(
        params.n, links, undirected=True, positions=positions
    )


def is_connected(graph: Graph, a: NodeId, b: NodeId) -> bool:
    """True iff some path joins ``a`` and ``b``, ignoring rates and delays."""
    if not (0 <= a < graph.n and 0 <= b < graph.n):
        raise InvalidParamsError(f"nodes {a}, {b} out of range [0, {graph.n})")
    if a == b:
        return True
    seen = [False] * graph.n
    seen[a] = True
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for link in graph.arcs_from(u):
            v = link.v
            if not seen[v]:
                if v == b:
                    return True
                seen[v] = True
                queue.append(v)
    return False
