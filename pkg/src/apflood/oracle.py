"""Ground-truth path quality: optimal secondaries via a penalized graph.

For a primary path P between two nodes, the optimal alternate is found by
raising the cost of every link on P from 1 to 1 + D (D = hop diameter) and
running a shortest-path search on the result. The cost of any simple path q
in that penalized graph equals length(q) + D * shared_links(q, P), so the
search trades one extra shared link against D hops of detour. Exhaustive
enumeration of the same objective is provided for cross-validation on small
graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush

from .topology import Graph, NodePath, bfs_distances, diameter

# Enumeration guard for brute_force_secondary.
MAX_BRUTE_FORCE_NODES = 14


@dataclass(frozen=True)
class SecondaryVerdict:
    """The oracle's best alternate for one primary path.

    oracle_similarity counts undirected links shared with the primary;
    oracle_length is the alternate's hop count. When no simple path other
    than the primary scores better, oracle_path equals the primary itself
    and the pair has no distinct secondary.
    """

    oracle_path: NodePath
    oracle_similarity: int
    oracle_length: int


def path_links(path) -> frozenset[tuple[int, int]]:
    """Undirected link set of a node sequence, as (min, max) pairs."""
    return frozenset(
        (a, b) if a < b else (b, a) for a, b in zip(path, path[1:])
    )


def validate_path(g: Graph, path) -> None:
    """Raise ValueError unless path is a non-empty simple path in g."""
    if len(path) == 0:
        raise ValueError("empty path")
    if len(set(path)) != len(path):
        raise ValueError(f"path repeats a node: {path}")
    for a, b in zip(path, path[1:]):
        if not (0 <= a < g.n) or not (0 <= b < g.n) or not g.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not a link of the graph")
    if len(path) == 1 and not (0 <= path[0] < g.n):
        raise ValueError(f"node {path[0]} out of range")


def similarity(a, b) -> int:
    """Number of undirected links two paths have in common."""
    return len(path_links(a) & path_links(b))


def node_overlap(a, b) -> int:
    """Number of interior nodes two paths share (endpoints excluded)."""
    return len(set(a[1:-1]) & set(b[1:-1]))


def modified_graph(g: Graph, primary) -> Graph:
    """Copy of g where every link on the primary costs 1 + diameter(g).

    Nodes and links are kept; only costs change, so penalized links remain
    usable when no detour exists.
    """
    validate_path(g, primary)
    penalty = 1.0 + diameter(g)
    costs = {link: penalty for link in path_links(primary)}
    return Graph(n=g.n, adj=g.adj, costs=costs)


def optimal_secondary(g: Graph, primary, *, _diam: int | None = None) -> SecondaryVerdict:
    """Best alternate path for primary, by penalized cost then shared links.

    Runs Dijkstra where a step over a primary link costs 1 + D and any
    other step costs 1; among equal-cost paths the one sharing fewer links
    with the primary wins, then the lexicographically smallest node
    sequence. Deterministic.
    """
    validate_path(g, primary)
    if len(primary) < 2:
        raise ValueError("primary must join two distinct nodes")
    diam = diameter(g) if _diam is None else _diam
    penalized = path_links(primary)
    src, dst = primary[0], primary[-1]
    settled: set[int] = set()
    heap: list[tuple[int, int, NodePath]] = [(0, 0, (src,))]
    while heap:
        cost, shared, path = heappop(heap)
        u = path[-1]
        if u in settled:
            continue
        settled.add(u)
        if u == dst:
            return SecondaryVerdict(path, shared, len(path) - 1)
        for v in g.adj[u]:
            if v in settled:
                continue
            on_primary = ((u, v) if u < v else (v, u)) in penalized
            heappush(
                heap,
                (cost + 1 + diam * on_primary, shared + on_primary, path + (v,)),
            )
    raise ValueError(f"no path from {src} to {dst}")  # unreachable on connected graphs


def brute_force_secondary(g: Graph, primary) -> tuple[int, NodePath]:
    """Exhaustive minimum of length(q) + D * similarity(q, primary) over all
    simple paths q joining the primary's endpoints.

    Returns (minimal cost, minimizing path), breaking ties exactly like
    optimal_secondary (fewer shared links, then lexicographic order), so on
    small graphs the two must agree. Guarded to MAX_BRUTE_FORCE_NODES.
    """
    if g.n > MAX_BRUTE_FORCE_NODES:
        raise ValueError(f"graph too large to enumerate (n={g.n} > {MAX_BRUTE_FORCE_NODES})")
    validate_path(g, primary)
    if len(primary) < 2:
        raise ValueError("primary must join two distinct nodes")
    diam = diameter(g)
    penalized = path_links(primary)
    src, dst = primary[0], primary[-1]
    best: tuple[int, int, NodePath] | None = None

    def walk(path: list[int], cost: int, shared: int) -> None:
        nonlocal best
        u = path[-1]
        if u == dst:
            key = (cost, shared, tuple(path))
            if best is None or key < best:
                best = key
            return
        for v in g.adj[u]:
            if v in path:
                continue
            on_primary = ((u, v) if u < v else (v, u)) in penalized
            path.append(v)
            walk(path, cost + 1 + diam * on_primary, shared + on_primary)
            path.pop()

    walk([src], 0, 0)
    assert best is not None
    return best[0], best[2]


def is_primary_optimal(g: Graph, path) -> bool:
    """True when the path's hop count equals the BFS distance of its endpoints."""
    validate_path(g, path)
    return len(path) - 1 == bfs_distances(g, path[0])[path[-1]]


def is_secondary_optimal(g: Graph, primary, secondary) -> bool:
    """True when secondary matches the oracle's (shared links, length) verdict
    for this primary. Raises ValueError when the endpoints differ.
    """
    validate_path(g, primary)
    validate_path(g, secondary)
    if (primary[0], primary[-1]) != (secondary[0], secondary[-1]):
        raise ValueError(
            f"endpoint mismatch: {primary[0]}->{primary[-1]} vs {secondary[0]}->{secondary[-1]}"
        )
    verdict = optimal_secondary(g, primary)
    return (
        similarity(primary, secondary) == verdict.oracle_similarity
        and len(secondary) - 1 == verdict.oracle_length
    )


class SecondaryOracle:
    """Memoizing front end for optimal_secondary over one graph.

    Route tables produced by a sweep revisit the same few shortest paths for
    every seed and beta, so verdicts are cached per primary node sequence.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.diam = diameter(g)
        self._verdicts: dict[NodePath, SecondaryVerdict] = {}

    def verdict(self, primary) -> SecondaryVerdict:
        primary = tuple(primary)
        hit = self._verdicts.get(primary)
        if hit is None:
            hit = optimal_secondary(self.graph, primary, _diam=self.diam)
            self._verdicts[primary] = hit
        return hit

    def has_distinct_secondary(self, primary) -> bool:
        """False when the oracle's best alternate is the primary itself."""
        return self.verdict(primary).oracle_path != tuple(primary)
