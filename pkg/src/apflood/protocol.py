"""Per-node behavior of the adaptive probabilistic flooding protocol.

Every node periodically announces itself with an advertisement message that
accumulates the ids of the nodes it traverses (index 0 is the source). A
relay that sees its own id drops the message; otherwise it learns a
backward path to the source and to every intermediate node, appends itself,
and re-floods on each remaining link independently with probability
beta ** n, where n counts how many advertisements from that source the
relay has already accepted. The first reception therefore always floods;
later ones decay exponentially.

Messages are plain tuples of node ids (AdvMessage); paths stored in route
tables run from the owning node to the destination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .topology import NodePath
from .oracle import path_links

AdvMessage = tuple[int, ...]


@dataclass(slots=True)
class RouteEntry:
    """Primary/secondary paths one node holds toward one destination.

    Both paths start at owner and end at dest; the secondary, when present,
    always differs from the primary as a node sequence.
    """

    owner: int
    dest: int
    primary: NodePath | None = None
    secondary: NodePath | None = None


@dataclass(slots=True)
class NodeState:
    """Mutable per-node protocol state: route table plus per-source counters.

    counters[s] is the number of non-looping advertisements from source s
    accepted so far in the current discovery round.
    """

    node_id: int
    counters: dict[int, int] = field(default_factory=dict)
    routes: dict[int, RouteEntry] = field(default_factory=dict)


@dataclass(slots=True)
class FloodDecision:
    """Transmissions to emit: (neighbor id, message) pairs, in link order."""

    transmissions: list[tuple[int, AdvMessage]]


def flood_probability(beta: float, n: int) -> float:
    """Probability beta ** n of re-flooding after n prior receptions.

    Defined as 1.0 for n = 0 whatever beta is, so the first reception always
    floods; beta = 1 is rejected because the flood would never decay.
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must be in [0, 1), got {beta}")
    if n < 0:
        raise ValueError(f"reception count must be >= 0, got {n}")
    if n == 0:
        return 1.0
    return beta**n


def candidate_paths(j: int, adv: AdvMessage) -> list[tuple[int, NodePath]]:
    """Paths node j overhears from an advertisement, one per carried id.

    For adv = (s, ..., x) the relay learns, for every index i, a path from
    j back to adv[i]: j followed by the traversed ids in reverse order down
    to adv[i]. Yielded source-first, so the longest path comes first. The
    caller must already have discarded looping messages (j in adv).
    """
    if j in adv:
        raise ValueError(f"node {j} appears in {adv}; looping message must be dropped")
    rev = adv[::-1]
    length = len(adv)
    return [(adv[i], (j,) + rev[: length - i]) for i in range(length)]


def consider_candidate(entry: RouteEntry, candidate: NodePath, rng: random.Random) -> None:
    """Fold one overheard path into a route entry, in place.

    The primary is set when absent and replaced only by a strictly shorter
    candidate; a candidate promoted to primary is not also examined as
    secondary. The secondary is set when absent (never equal to the
    primary), replaced when the candidate shares fewer links with the
    current primary, or as many but strictly shorter; an exact tie on both
    is replaced with probability 1/2.
    """
    if candidate[0] != entry.owner or candidate[-1] != entry.dest:
        raise ValueError(
            f"candidate {candidate} does not join {entry.owner} to {entry.dest}"
        )
    if entry.primary is None:
        entry.primary = candidate
        return
    if len(candidate) < len(entry.primary):
        entry.primary = candidate
        return
    if candidate == entry.primary:
        return
    if entry.secondary is None:
        entry.secondary = candidate
        return
    if candidate == entry.secondary:
        return
    primary_links = path_links(entry.primary)
    cand_shared = len(path_links(candidate) & primary_links)
    cur_shared = len(path_links(entry.secondary) & primary_links)
    if cand_shared < cur_shared:
        entry.secondary = candidate
    elif cand_shared == cur_shared:
        if len(candidate) < len(entry.secondary):
            entry.secondary = candidate
        elif len(candidate) == len(entry.secondary) and rng.random() < 0.5:
            entry.secondary = candidate


def handle_adv(
    state: NodeState,
    adv: AdvMessage,
    sender: int,
    beta: float,
    neighbors: tuple[int, ...],
    rng: random.Random,
) -> FloodDecision:
    """Process one delivered advertisement at a node.

    Looping messages (own id already in the list) are dropped without
    touching tables or counters. Otherwise every overheard path is offered
    to the route table, the node appends its id, draws one independent
    uniform per neighbor other than the sender against beta ** n, and
    finally increments its counter for the message's source - so the k-th
    accepted delivery floods with exponent k - 1.
    """
    if not adv:
        raise ValueError("empty advertisement")
    if sender != adv[-1]:
        raise ValueError(f"sender {sender} is not the last relay of {adv}")
    if sender not in neighbors:
        raise ValueError(f"sender {sender} is not adjacent to node {state.node_id}")
    j = state.node_id
    if j in adv:
        return FloodDecision([])
    for dest, candidate in candidate_paths(j, adv):
        entry = state.routes.get(dest)
        if entry is None:
            entry = state.routes[dest] = RouteEntry(owner=j, dest=dest)
        consider_candidate(entry, candidate, rng)
    forwarded = adv + (j,)
    source = adv[0]
    count = state.counters.get(source, 0)
    p = flood_probability(beta, count)
    sends = [
        (nbr, forwarded) for nbr in neighbors if nbr != sender and rng.random() < p
    ]
    state.counters[source] = count + 1
    return FloodDecision(sends)


def initiate_adv(source: int, neighbors: tuple[int, ...]) -> FloodDecision:
    """Start a discovery: the source floods (source,) to every neighbor."""
    msg: AdvMessage = (source,)
    return FloodDecision([(nbr, msg) for nbr in neighbors])
