"""Delay-bounded maximum-capacity routing on wireless-mesh-style graphs.

The package bundles four dynamic-programming solvers (label setting,
label correcting, all-pairs intermediate-node, and a delay-indexed
flooding table), a reproducible random geometric topology generator, two
independent exact oracles, and an agreement/benchmark harness with a CLI.
"""

from .errors import (
    BudgetExceededError,
    GraphFormatError,
    InsufficientDataError,
    InvalidParamsError,
    InvalidPathError,
    InvalidQueryError,
    LinkMismatchError,
    NoPathError,
    PathCycleError,
    QuantizationError,
    WmnrouteError,
)
from .graph import (
    Graph,
    INFINITE_RATE,
    Link,
    NodeId,
    Path,
    RouteQuery,
    RouteResult,
    RouteStatus,
    path_concat,
    path_delay,
    path_rate,
    validate_graph,
)
from .oracle import brute_force_route, canonical_graph, threshold_exact_route
from .routing import (
    AllPairsTable,
    Label,
    LabelTable,
    MraTable,
    default_tick,
    dijkstra_labels,
    extract_path,
    route_bellman_ford,
    route_dijkstra,
    route_floyd_warshall,
    route_from_table,
    route_mra,
)
from .topology import TopologyParams, ValueModel, generate_topology, is_connected

__version__ = "0.1.0"

__all__ = [
    "AllPairsTable",
    "BudgetExceededError",
    "Graph",
    "GraphFormatError",
    "INFINITE_RATE",
    "InsufficientDataError",
    "InvalidParamsError",
    "InvalidPathError",
    "InvalidQueryError",
    "Label",
    "LabelTable",
    "Link",
    "LinkMismatchError",
    "MraTable",
    "NoPathError",
    "NodeId",
    "Path",
    "PathCycleError",
    "QuantizationError",
    "RouteQuery",
    "RouteResult",
    "RouteStatus",
    "TopologyParams",
    "ValueModel",
    "WmnrouteError",
    "brute_force_route",
    "canonical_graph",
    "default_tick",
    "dijkstra_labels",
    "extract_path",
    "generate_topology",
    "is_connected",
    "path_concat",
    "path_delay",
    "path_rate",
    "route_bellman_ford",
    "route_dijkstra",
    "route_floyd_warshall",
    "route_from_table",
    "route_mra",
    "threshold_exact_route",
    "validate_graph",
]
