"""Adaptive probabilistic flooding: multipath discovery simulation toolkit.

A deterministic slotted simulator for a source-routed discovery protocol in
which every node periodically floods an advertisement and relays re-flood
with exponentially decaying probability, learning a shortest primary path
and a maximally link-disjoint secondary path to every other node. Includes
exact optimality oracles, overhead/path-quality metrics, bundled reference
topologies, and a CLI (``apflood``) for reproducing the sweep experiments.
"""

from .engine import Event, RunReport, run_advertisement, run_full_round
from .metrics import (
    OverheadReport,
    QualityReport,
    message_bound,
    message_bound_corrected,
    overhead_report,
    path_quality,
    refresh_count,
)
from .oracle import (
    SecondaryOracle,
    SecondaryVerdict,
    brute_force_secondary,
    is_primary_optimal,
    is_secondary_optimal,
    modified_graph,
    node_overlap,
    optimal_secondary,
    path_links,
    similarity,
)
from .protocol import (
    AdvMessage,
    FloodDecision,
    NodeState,
    RouteEntry,
    candidate_paths,
    consider_candidate,
    flood_probability,
    handle_adv,
    initiate_adv,
)
from .topology import (
    BUILTIN_TOPOLOGIES,
    DisconnectedGraphError,
    Graph,
    NodePath,
    TopologyError,
    TopologyParseError,
    TopologyStats,
    bfs_distances,
    builtin_topology,
    diameter,
    dijkstra_path,
    format_topology,
    load_topology,
    parse_topology,
    random_graph,
    topology_stats,
    weighted_diameter,
)

__version__ = "0.1.0"

__all__ = [
    "AdvMessage",
    "BUILTIN_TOPOLOGIES",
    "DisconnectedGraphError",
    "Event",
    "FloodDecision",
    "Graph",
    "NodePath",
    "NodeState",
    "OverheadReport",
    "QualityReport",
    "RouteEntry",
    "RunReport",
    "SecondaryOracle",
    "SecondaryVerdict",
    "TopologyError",
    "TopologyParseError",
    "TopologyStats",
    "bfs_distances",
    "brute_force_secondary",
    "builtin_topology",
    "candidate_paths",
    "consider_candidate",
    "diameter",
    "dijkstra_path",
    "flood_probability",
    "format_topology",
    "handle_adv",
    "initiate_adv",
    "is_primary_optimal",
    "is_secondary_optimal",
    "load_topology",
    "message_bound",
    "message_bound_corrected",
    "modified_graph",
    "node_overlap",
    "optimal_secondary",
    "overhead_report",
    "parse_topology",
    "path_links",
    "path_quality",
    "random_graph",
    "refresh_count",
    "run_advertisement",
    "run_full_round",
    "similarity",
    "topology_stats",
    "weighted_diameter",
]
