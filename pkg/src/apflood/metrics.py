"""Overhead and path-quality evaluation of completed discovery rounds.

Message counts are link transmissions (a message relayed over three links
counts three times). n_m is the per-node average over a full round of N
advertisements; its analytical ceiling N * (mean_degree - 1) / (1 - beta)
ignores the source's own initial flood, so a corrected variant adds
mean_degree - the corrected bound is the one safe to assert against.

Connectivity (pc, sc) is the fraction of ordered node pairs holding a
primary (resp. secondary) route; optimality (po, so) the fraction whose
route matches the oracle. Pairs whose discovered primary admits no distinct
alternate at all stay in the sc denominator but are excluded from the so
denominator, where no target exists.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .engine import RunReport
from .oracle import SecondaryOracle, node_overlap, similarity
from .protocol import NodeState
from .topology import Graph, bfs_distances

# Forgives IEEE artifacts like 1 / 0.1 falling a hair below 10.
_RATIO_EPS = 1e-9


@dataclass(frozen=True)
class QualityReport:
    """Path quality of one full round, plus its message budget.

    so and mean_suboptimal_node_overlap are None when their conditioning
    set is empty (no pair with a distinct alternate, respectively no
    connected-but-suboptimal secondary).
    """

    pc: float
    sc: float
    po: float
    so: float | None
    mean_suboptimal_node_overlap: float | None
    n_m: float | None = None
    bound_paper: float | None = None
    bound_corrected: float | None = None


@dataclass(frozen=True)
class OverheadReport:
    """Advertisement vs refresh traffic inside one observation window."""

    window: float
    t_adv: float
    t_refresh: float
    n_refresh: int
    n_adv: int
    adv_share: float


def _floor_ratio(numerator: float, denominator: float) -> int:
    return int(math.floor(numerator / denominator + _RATIO_EPS))


def message_bound(n: int, mean_degree: float, beta: float) -> float:
    """Per-node message ceiling N * (mean_degree - 1) / (1 - beta) for a full
    round of N advertisements (geometric sum of the decaying re-floods).
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must be in [0, 1), got {beta}")
    return n * (mean_degree - 1.0) / (1.0 - beta)


def message_bound_corrected(n: int, mean_degree: float, beta: float) -> float:
    """message_bound plus the sources' own initial floods (mean_degree per
    node per round), which the plain ceiling omits; measured n_m can exceed
    the plain ceiling on tiny graphs but never this one.
    """
    return message_bound(n, mean_degree, beta) + mean_degree


def path_quality(
    g: Graph,
    tables: list[NodeState],
    run: RunReport | None = None,
    beta: float | None = None,
    oracle: SecondaryOracle | None = None,
) -> QualityReport:
    """Grade the route tables of a completed full round against the oracle.

    so judges each stored secondary against the oracle verdict for the
    discovered (not canonical) primary; the overlap statistic averages
    shared interior nodes over pairs whose secondary exists but misses the
    verdict. Pass run and beta together to also fill n_m and both bounds;
    pass a SecondaryOracle to reuse its verdict cache across runs.
    """
    if (run is None) != (beta is None):
        raise ValueError("run and beta must be given together")
    if oracle is None:
        oracle = SecondaryOracle(g)
    dist = [bfs_distances(g, src) for src in range(g.n)]
    pairs = 0
    have_primary = 0
    primary_optimal = 0
    have_secondary = 0
    so_den = 0
    so_num = 0
    overlaps: list[int] = []
    for i in range(g.n):
        routes = tables[i].routes
        for j in range(g.n):
            if i == j:
                continue
            pairs += 1
            entry = routes.get(j)
            primary = entry.primary if entry is not None else None
            secondary = entry.secondary if entry is not None else None
            if secondary is not None:
                have_secondary += 1
            if primary is None:
                continue
            have_primary += 1
            if len(primary) - 1 == dist[i][j]:
                primary_optimal += 1
            verdict = oracle.verdict(primary)
            if verdict.oracle_path == primary:
                continue  # no distinct alternate exists for this primary
            so_den += 1
            if secondary is None:
                continue
            if (
                similarity(primary, secondary) == verdict.oracle_similarity
                and len(secondary) - 1 == verdict.oracle_length
            ):
                so_num += 1
            else:
                overlaps.append(node_overlap(primary, secondary))
    n_m = bound = bound_corr = None
    if run is not None and beta is not None:
        n_m = run.transmissions_total / g.n
        bound = message_bound(g.n, g.mean_degree, beta)
        bound_corr = message_bound_corrected(g.n, g.mean_degree, beta)
    return QualityReport(
        pc=have_primary / pairs,
        sc=have_secondary / pairs,
        po=primary_optimal / pairs,
        so=(so_num / so_den) if so_den else None,
        mean_suboptimal_node_overlap=(sum(overlaps) / len(overlaps)) if overlaps else None,
        n_m=n_m,
        bound_paper=bound,
        bound_corrected=bound_corr,
    )


def refresh_count(window: float, t_refresh: float, tables: list[NodeState]) -> int:
    """Keep-alive messages in a window: floor(window / t_refresh) times the
    summed hop lengths of every stored primary and secondary (one message
    per link traveled per refresh period; absent paths contribute 0).
    """
    if t_refresh <= 0:
        raise ValueError(f"t_refresh must be positive, got {t_refresh}")
    if window < t_refresh:
        raise ValueError(f"window {window} shorter than t_refresh {t_refresh}")
    periods = _floor_ratio(window, t_refresh)
    hops = 0
    for state in tables:
        for entry in state.routes.values():
            if entry.primary is not None:
                hops += len(entry.primary) - 1
            if entry.secondary is not None:
                hops += len(entry.secondary) - 1
    return periods * hops


def overhead_report(
    window: float, t_adv: float, t_refresh: float, run: RunReport
) -> OverheadReport:
    """Advertisement vs refresh message totals for one observation window.

    One full round costs run.transmissions_total and recurs every t_adv;
    refreshes recur every t_refresh along all stored paths.
    """
    if t_adv <= 0:
        raise ValueError(f"t_adv must be positive, got {t_adv}")
    if not t_refresh <= t_adv <= window:
        warnings.warn(
            f"t_adv={t_adv} outside the recommended [t_refresh={t_refresh}, "
            f"window={window}] range",
            stacklevel=2,
        )
    n_adv = run.transmissions_total * _floor_ratio(window, t_adv)
    n_refresh = refresh_count(window, t_refresh, run.route_tables)
    total = n_adv + n_refresh
    return OverheadReport(
        window=window,
        t_adv=t_adv,
        t_refresh=t_refresh,
        n_refresh=n_refresh,
        n_adv=n_adv,
        adv_share=(n_adv / total) if total else 0.0,
    )
