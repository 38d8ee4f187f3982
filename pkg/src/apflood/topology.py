"""Undirected network topologies: edge-list I/O, synthetic graphs, path algorithms.

Graphs are simple (no self-loops, no parallel links), node ids run 0..n-1,
and every link costs 1.0 unless an explicit cost table is attached. All
functions here are pure; Graph values are immutable after construction and
safe to share between concurrent runs.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field
from heapq import heappop, heappush
from importlib import resources

NodePath = tuple[int, ...]

BUILTIN_TOPOLOGIES = ("abilene", "geant", "tiger2")

# Rejection-sampling budget for random_graph before giving up.
MAX_GENERATION_ATTEMPTS = 5000


class TopologyError(ValueError):
    """Base class for topology construction problems."""


class TopologyParseError(TopologyError):
    """Malformed edge-list input; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DisconnectedGraphError(TopologyError):
    """A structurally valid graph that is not connected."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with optional per-link costs.

    adj[u] is the sorted tuple of u's neighbors; costs maps (u, v) with
    u < v to a positive cost and may be None, meaning every link costs 1.0.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    costs: dict[tuple[int, int], float] | None = field(default=None, compare=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges,
        costs: dict[tuple[int, int], float] | None = None,
    ) -> "Graph":
        """Build a graph from (u, v) pairs; duplicates collapse, loops are rejected."""
        if n < 1:
            raise TopologyError("graph needs at least one node")
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise TopologyError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise TopologyError(f"self-loop at node {u}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in neighbor_sets)
        if costs is not None:
            for (u, v), w in costs.items():
                if u >= v or v not in adj[u]:
                    raise TopologyError(f"cost given for non-edge ({u}, {v})")
                if w <= 0:
                    raise TopologyError(f"non-positive cost on ({u}, {v})")
        return cls(n=n, adj=adj, costs=costs)

    def edges(self) -> list[tuple[int, int]]:
        """All links as (u, v) pairs with u < v, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def mean_degree(self) -> float:
        return 2.0 * self.edge_count / self.n

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def cost(self, u: int, v: int) -> float:
        if not self.has_edge(u, v):
            raise TopologyError(f"no link ({u}, {v})")
        if self.costs is None:
            return 1.0
        return self.costs.get((min(u, v), max(u, v)), 1.0)

    def is_connected(self) -> bool:
        return self.n == 1 or all(d >= 0 for d in bfs_distances(self, 0))


@dataclass(frozen=True)
class TopologyStats:
    """Summary of a topology: size, degree moments, diameters, oracle path lengths.

    modified_diameter_max is the worst hop distance that remains after the
    links of any ordered pair's optimal primary are discarded (the largest
    finite distance, maximized over all such modified graphs). Mean lengths
    are averaged over ordered pairs (the secondary mean over pairs that
    admit a secondary distinct from the primary, None if none do).
    """

    n: int
    mean_degree: float
    degree_stddev: float
    diameter: int
    modified_diameter_max: int
    mean_optimal_primary_len: float
    mean_optimal_secondary_len: float | None


def parse_topology(text: str) -> Graph:
    """Parse an edge-list document ("u v" per line, # comments) into a Graph.

    Node count is 1 + the largest id seen. Raises TopologyParseError for
    malformed lines and DisconnectedGraphError for valid but disconnected
    input (every experiment topology must be connected).
    """
    edges: list[tuple[int, int]] = []
    max_id = -1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise TopologyParseError(line_no, f"expected 'u v', got {raw.strip()!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise TopologyParseError(line_no, f"non-integer node id in {raw.strip()!r}") from None
        if u < 0 or v < 0:
            raise TopologyParseError(line_no, f"negative node id in {raw.strip()!r}")
        if u == v:
            raise TopologyParseError(line_no, f"self-loop at node {u}")
        edges.append((u, v))
        max_id = max(max_id, u, v)
    if max_id < 0:
        raise TopologyParseError(0, "no edges found")
    g = Graph.from_edges(max_id + 1, edges)
    if not g.is_connected():
        raise DisconnectedGraphError(f"graph with {g.n} nodes is not connected")
    return g


def format_topology(g: Graph) -> str:
    """Edge-list text for a graph: one "u v" per line, u < v, sorted."""
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def load_topology(path) -> Graph:
    """Read and parse an edge-list file."""
    with open(path, encoding="utf-8") as fh:
        return parse_topology(fh.read())


def builtin_topology(name: str) -> Graph:
    """Load one of the bundled reference topologies (see BUILTIN_TOPOLOGIES)."""
    if name not in BUILTIN_TOPOLOGIES:
        raise TopologyError(f"unknown builtin topology {name!r}; have {BUILTIN_TOPOLOGIES}")
    text = resources.files("apflood").joinpath(f"data/{name}.txt").read_text(encoding="utf-8")
    return parse_topology(text)


def random_graph(n: int, target_mean_degree: float, seed: int) -> Graph:
    """Connected G(n, m) sample with m chosen to hit the target mean degree.

    Draws m = round(n * target / 2) distinct links uniformly and rejects
    samples that are disconnected; whenever m >= n also rejects samples
    with a degree-1 node, mirroring the reference topologies where every
    router is at least dual-homed. Deterministic for a fixed (n, target,
    seed). Raises TopologyError on infeasible targets or when the attempt
    budget runs out.
    """
    if n < 3:
        raise TopologyError("need at least 3 nodes")
    lo, hi = 2.0 * (n - 1) / n, float(n - 1)
    if not (lo <= target_mean_degree <= hi):
        raise TopologyError(
            f"target mean degree {target_mean_degree} infeasible for n={n} "
            f"(must be within [{lo:.3f}, {hi}])"
        )
    m = round(n * target_mean_degree / 2.0)
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if m < n - 1 or m > len(all_pairs):
        raise TopologyError(f"edge count {m} infeasible for n={n}")
    need_min_degree_2 = m >= n
    rng = random.Random(seed)
    for _ in range(MAX_GENERATION_ATTEMPTS):
        edges = rng.sample(all_pairs, m)
        g = Graph.from_edges(n, edges)
        if need_min_degree_2 and min(len(a) for a in g.adj) < 2:
            continue
        if g.is_connected():
            return g
    raise TopologyError(
        f"no connected sample within {MAX_GENERATION_ATTEMPTS} attempts "
        f"for (n={n}, target={target_mean_degree})"
    )


def bfs_distances(g: Graph, src: int) -> list[int]:
    """Hop distance from src to every node; -1 marks unreachable nodes."""
    if not (0 <= src < g.n):
        raise TopologyError(f"source {src} out of range for n={g.n}")
    dist = [-1] * g.n
    dist[src] = 0
    frontier = [src]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in g.adj[u]:
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def dijkstra_path(g: Graph, src: int, dst: int) -> tuple[NodePath, float]:
    """Minimum-cost path from src to dst and its total cost.

    Cost ties are broken toward the lexicographically smallest node
    sequence, so the result is deterministic. Raises TopologyError when
    dst is unreachable.
    """
    for node in (src, dst):
        if not (0 <= node < g.n):
            raise TopologyError(f"node {node} out of range for n={g.n}")
    if src == dst:
        return (src,), 0.0
    unit = g.costs is None
    settled: set[int] = set()
    heap: list[tuple[float, NodePath]] = [(0.0, (src,))]
    while heap:
        cost, path = heappop(heap)
        u = path[-1]
        if u in settled:
            continue
        settled.add(u)
        if u == dst:
            return path, cost
        for v in g.adj[u]:
            if v not in settled:
                step = 1.0 if unit else g.cost(u, v)
                heappush(heap, (cost + step, path + (v,)))
    raise TopologyError(f"node {dst} unreachable from {src}")


def diameter(g: Graph) -> int:
    """Largest hop distance over all node pairs (unit link metric)."""
    if g.n == 1:
        return 0
    best = 0
    for src in range(g.n):
        dist = bfs_distances(g, src)
        far = max(dist)
        if min(dist) < 0:
            raise DisconnectedGraphError("diameter undefined on disconnected graph")
        best = max(best, far)
    return best


def weighted_diameter(g: Graph) -> float:
    """Largest minimum-cost distance over all node pairs."""
    best = 0.0
    for src in range(g.n):
        dist = _dijkstra_costs(g, src)
        if max(dist) == float("inf"):
            raise DisconnectedGraphError("diameter undefined on disconnected graph")
        best = max(best, max(dist))
    return best


def _dijkstra_costs(g: Graph, src: int) -> list[float]:
    dist = [float("inf")] * g.n
    dist[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        d, u = heappop(heap)
        if d > dist[u]:
            continue
        for v in g.adj[u]:
            nd = d + g.cost(u, v)
            if nd < dist[v]:
                dist[v] = nd
                heappush(heap, (nd, v))
    return dist


def _max_finite_distance_without(g: Graph, links: frozenset) -> int:
    """Largest finite hop distance once the given links are discarded."""
    pruned = Graph(
        n=g.n,
        adj=tuple(
            tuple(v for v in g.adj[u] if ((u, v) if u < v else (v, u)) not in links)
            for u in range(g.n)
        ),
    )
    return max(max(bfs_distances(pruned, src)) for src in range(g.n))


def topology_stats(g: Graph) -> TopologyStats:
    """All summary columns for a connected topology.

    The oracle-derived columns (optimal path length means, modified-graph
    diameter) use each ordered pair's canonical optimal primary, i.e. the
    lexicographically smallest shortest path.
    """
    # Imported here: the oracle module builds on this one.
    from .oracle import SecondaryOracle, path_links

    degrees = [g.degree(u) for u in range(g.n)]
    diam = diameter(g)
    oracle = SecondaryOracle(g)
    primary_lens: list[int] = []
    secondary_lens: list[int] = []
    seen_link_sets: dict[frozenset, int] = {}
    mod_diam_max = 0
    for src in range(g.n):
        for dst in range(g.n):
            if src == dst:
                continue
            primary, _ = dijkstra_path(g, src, dst)
            primary_lens.append(len(primary) - 1)
            verdict = oracle.verdict(primary)
            if verdict.oracle_path != primary:
                secondary_lens.append(verdict.oracle_length)
            links = path_links(primary)
            if links not in seen_link_sets:
                seen_link_sets[links] = _max_finite_distance_without(g, links)
            mod_diam_max = max(mod_diam_max, seen_link_sets[links])
    return TopologyStats(
        n=g.n,
        mean_degree=g.mean_degree,
        degree_stddev=statistics.pstdev(degrees),
        diameter=diam,
        modified_diameter_max=mod_diam_max,
        mean_optimal_primary_len=statistics.fmean(primary_lens),
        mean_optimal_secondary_len=(
            statistics.fmean(secondary_lens) if secondary_lens else None
        ),
    )
