"""Dominating sets of walk graphs.

``probabilistic_dominating_set`` turns the first-moment existence argument into an
algorithm: sample each vertex with probability ``p``, add every vertex left
undominated, and retry until the set meets the size bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, ResourceCapError
from .walkgraph import Graph, bits_of

EXACT_CAP = 30


class AttemptsExhausted(ResourceCapError):
    pass


@dataclass(frozen=True)
class DomSetResult:
    vertex_ids: tuple[int, ...]
    bound: float
    method: str
    attempts: int = 0
    size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "vertex_ids", tuple(sorted(self.vertex_ids)))
        object.__setattr__(self, "size", len(self.vertex_ids))


def alon_spencer_bound(n: int, delta: int) -> float:
    """``n (1 - delta / (delta+1)^(1 + 1/delta))``: the expected size of sample-then-repair."""
    if n < 1 or delta < 1:
        raise PreconditionError(f"need n >= 1 and delta >= 1, got n={n}, delta={delta}")
    return n * (1 - delta / (delta + 1) ** (1 + 1 / delta))


def alon_spencer_bound_expanded(n: int, delta: int) -> float:
    """The same bound written as ``n (1 - (d+1)^(-1/d) + (d+1)^(-(d+1)/d))``."""
    d = delta
    return n * (1 - (d + 1) ** (-1 / d) + (d + 1) ** (-(d + 1) / d))


def sampling_probability(delta: int) -> float:
    """Minimiser of ``p + (1 - p)^(delta+1)``."""
    return 1 - (delta + 1) ** (-1 / delta)


def verify_dominating(graph: Graph, vertex_ids) -> bool:
    covered = 0
    for v in vertex_ids:
        covered |= graph.closed[v]
    return covered == (1 << graph.vertex_count) - 1


def prune(graph: Graph, vertex_ids) -> list[int]:
    """Drop members, in increasing id order, whose removal leaves the set dominating."""
    members = sorted(vertex_ids)
    cover = np.zeros(graph.vertex_count, dtype=np.int64)
    closed = {v: bits_of(graph.closed[v]) for v in members}
    for v in members:
        cover[closed[v]] += 1
    kept = []
    for v in members:
        if cover[closed[v]].min() >= 2:
            cover[closed[v]] -= 1
        else:
            kept.append(v)
    return kept


def probabilistic_dominating_set(graph: Graph, seed: int, max_attempts: int = 50,
                                 minimal: bool = True) -> DomSetResult:
    """Sample-then-repair, retried until ``|D| <= ceil(bound)`` for the measured minimum degree.

    The attempt is judged on the unpruned set ``D``; with ``minimal`` the accepted
    set is then pruned to an inclusion-minimal dominating set.
    """
    if max_attempts < 1:
        raise PreconditionError(f"max_attempts must be >= 1, got {max_attempts}")
    delta = graph.min_degree
    if graph.vertex_count == 0 or delta < 1:
        raise PreconditionError(f"probabilistic method needs minimum degree >= 1, got {delta}")
    n = graph.vertex_count
    bound = alon_spencer_bound(n, delta)
    limit = math.ceil(bound)
    p = sampling_probability(delta)
    everyone = (1 << n) - 1
    for attempt in range(max_attempts):
        # attempt streams are independent children of the master seed
        gen = np.random.default_rng([seed, attempt])
        chosen = np.flatnonzero(gen.random(n) < p).tolist()
        covered = 0
        for v in chosen:
            covered |= graph.closed[v]
        missed = bits_of(everyone & ~covered)
        if len(chosen) + len(missed) <= limit:
            found = chosen + missed
            if minimal:
                found = prune(graph, found)
            return DomSetResult(tuple(found), bound, "probabilistic", attempts=attempt + 1)
    raise AttemptsExhausted(f"no dominating set of size <= {limit} in {max_attempts} attempts")


def greedy_dominating_set(graph: Graph) -> DomSetResult:
    """Pick the vertex covering the most undominated vertices until all are covered (ties: smallest id)."""
    undominated = (1 << graph.vertex_count) - 1
    chosen = []
    while undominated:
        best, gain = -1, 0
        for v, m in enumerate(graph.closed):
            c = (m & undominated).bit_count()
            if c > gain:
                best, gain = v, c
        chosen.append(best)
        undominated &= ~graph.closed[best]
    return DomSetResult(tuple(chosen), _bound_or_nan(graph), "greedy")


def _bound_or_nan(graph: Graph) -> float:
    delta = graph.min_degree
    if graph.vertex_count and delta >= 1:
        return alon_spencer_bound(graph.vertex_count, delta)
    return math.nan


def exact_min_dominating_set(graph: Graph, cap: int = EXACT_CAP) -> DomSetResult:
    """Minimum dominating set by branch and bound.

    Branches on the lowest undominated vertex: one of its closed neighbours must be
    chosen.  A subtree is cut once it cannot beat the incumbent (greedy at start).
    """
    n = graph.vertex_count
    if n > cap:
        raise ResourceCapError(f"instance too large for exact search: {n} > {cap} vertices")
    best = list(greedy_dominating_set(graph).vertex_ids)
    everyone = (1 << n) - 1
    max_cover = max((m.bit_count() for m in graph.closed), default=1)

    def search(chosen, covered):
        nonlocal best
        if covered == everyone:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        remaining = n - covered.bit_count()
        if len(chosen) + -(-remaining // max_cover) >= len(best):
            return
        low = (~covered & everyone)
        u = (low & -low).bit_length() - 1
        for v in bits_of(graph.closed[u]):
            chosen.append(v)
            search(chosen, covered | graph.closed[v])
            chosen.pop()

    search([], 0)
    return DomSetResult(tuple(best), _bound_or_nan(graph), "exact")
