"""Vertex-intersection graph of catalog walks.

Two walks to ``(1, g)`` are adjacent when they visit a common lattice point whose
height lies in ``1 .. g-1`` (at any times).  Neighbourhoods are stored as Python
int bitsets: bit ``j`` of ``closed[i]`` is set iff ``j == i`` or ``j`` is adjacent
to ``i``.  Catalogs with tens of thousands of walks give dense graphs, for which
this is far cheaper than explicit edge lists.
"""

from __future__ import annotations

from collections import Counter
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .enumeration import WalkCatalog
from .errors import PreconditionError
from .lattice_walk import Point


def _mask(ids: Iterable[int], size: int) -> int:
    bits = np.zeros(size, dtype=bool)
    bits[list(ids)] = True
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    if not mask:
        return []
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


class Graph:
    """Simple undirected graph on ``0 .. vertex_count-1`` held as closed-neighbourhood bitsets."""

    def __init__(self, closed: list[int]):
        self.closed = tuple(closed)
        self.vertex_count = len(self.closed)
        for i, m in enumerate(self.closed):
            if not (m >> i) & 1:
                raise ValueError(f"closed neighbourhood of {i} must contain {i}")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        closed = [1 << i for i in range(vertex_count)]
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            closed[i] |= 1 << j
            closed[j] |= 1 << i
        return cls(closed)

    def neighbors(self, i: int) -> list[int]:
        return bits_of(self.closed[i] & ~(1 << i))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.neighbors(i)) for i in range(self.vertex_count))

    def degree(self, i: int) -> int:
        return self.closed[i].bit_count() - 1

    def degrees(self) -> list[int]:
        return [m.bit_count() - 1 for m in self.closed]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self):
        """Edges ``(i, j)`` with ``i < j`` in lexicographic order."""
        for i in range(self.vertex_count):
            for j in bits_of(self.closed[i] >> (i + 1)):
                yield i, i + 1 + j

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)


class WalkGraph(Graph):
    def __init__(self, catalog: WalkCatalog, closed: list[int], point_index: dict[Point, tuple[int, ...]]):
        super().__init__(closed)
        self.walks = catalog
        self.point_index = point_index


def visited_points(walk, g: int) -> set[Point]:
    """Distinct points of ``walk`` with height in ``1 .. g-1``.

    ``walk`` may be a :class:`CompletedWalk` or any sequence of ``(x, y)`` points.
    """
    positions = getattr(walk, "positions", walk)
    return {Point(*p) for p in positions if 1 <= p[1] <= g - 1}


def shared_points(w1, w2, g: int) -> set[Point]:
    return visited_points(w1, g) & visited_points(w2, g)


def build_graph(catalog: WalkCatalog) -> WalkGraph:
    g = catalog.g
    if g < 2:
        raise PreconditionError(f"edge criterion vacuous for g = {g}; need g >= 2")
    size = len(catalog)
    members: dict[Point, list[int]] = {}
    per_walk = []
    for i, w in enumerate(catalog.walks):
        pts = sorted(visited_points(w, g))
        per_walk.append(pts)
        for p in pts:
            members.setdefault(p, []).append(i)
    point_index = {p: tuple(ids) for p, ids in sorted(members.items())}
    point_mask = {p: _mask(ids, size) for p, ids in point_index.items()}
    closed = []
    for i, pts in enumerate(per_walk):
        m = 1 << i
        for p in pts:
            m |= point_mask[p]
        closed.append(m)
    return WalkGraph(catalog, closed, point_index)


def pairwise_graph(catalog: WalkCatalog) -> Graph:
    """O(V^2) reference construction from :func:`shared_points`."""
    g = catalog.g
    walks = catalog.walks
    edges = [(i, j) for i in range(len(walks)) for j in range(i + 1, len(walks))
             if shared_points(walks[i], walks[j], g)]
    return Graph.from_edges(len(walks), edges)


class DegreeReport(NamedTuple):
    min_degree: int
    max_degree: int
    degree_histogram: dict[int, int]


def degree_report(graph: Graph) -> DegreeReport:
    degs = graph.degrees()
    return DegreeReport(min(degs, default=0), max(degs, default=0), dict(sorted(Counter(degs).items())))
