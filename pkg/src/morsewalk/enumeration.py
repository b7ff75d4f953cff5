"""Counting formulas and exhaustive generation of completed walks ending at ``(1, g)``."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .distributions import ballot
from .errors import PreconditionError, ResourceCapError
from .lattice_walk import CompletedWalk, Step

DEFAULT_CAP = 10**7


def catalan(g: int) -> int:
    if g < 0:
        raise PreconditionError(f"g must be >= 0, got {g}")
    return comb(2 * g, g) // (g + 1)


def delta(g: int) -> int:
    """Catalan number minus one: the guaranteed minimum degree of the walk graph."""
    if g < 2:
        raise PreconditionError(f"delta needs g >= 2, got {g}")
    return catalan(g) - 1


def count_walks_length(n: int, g: int) -> int:
    """Walks of length exactly ``n`` from ``(1, 0)`` to ``(1, g)``."""
    if n < 0 or n % 2 or not 0 <= g <= n // 2:
        raise PreconditionError(f"need even n >= 0 and 0 <= g <= n/2, got n={n}, g={g}")
    return ballot(n) * comb(n // 2, g)


def _check_bounds(max_crit: int, g: int) -> None:
    if g < 0 or max_crit < 2 * g + 2:
        raise PreconditionError(f"need g >= 0 and max_crit >= 2g + 2, got max_crit={max_crit}, g={g}")


def lengths(max_crit: int, g: int) -> range:
    """Even walk lengths contributing to walks with at most ``max_crit`` critical points."""
    return range(2 * g, max_crit - 1, 2)


def m_number(max_crit: int, g: int) -> int:
    """Number of walks to ``(1, g)`` of length at most ``max_crit - 2``."""
    _check_bounds(max_crit, g)
    return sum(count_walks_length(n, g) for n in lengths(max_crit, g))


@dataclass(frozen=True)
class WalkCatalog:
    g: int
    max_len: int
    walks: tuple[CompletedWalk, ...]

    def __len__(self) -> int:
        return len(self.walks)

    def __iter__(self):
        return iter(self.walks)

    def __getitem__(self, i):
        return self.walks[i]

    def slice(self, n: int) -> list[CompletedWalk]:
        return [w for w in self.walks if w.n == n]


def _step_sequences(n: int, g: int):
    """Yield step tuples of length ``n`` from (1, 0) to (1, g) in R < L < D order.

    A partial walk at ``(x, y)`` with ``k`` steps left can still finish iff
    ``k - x + 1`` is even and the remaining counts ``r = (k - x + 1)/2``,
    ``d = g - y`` and ``l = k - r - d`` are all non-negative.
    """
    path = []

    def feasible(x, y, k):
        need_d = g - y
        twice_r = k - x + 1
        if need_d < 0 or twice_r < 0 or twice_r % 2:
            return False
        return k - twice_r // 2 - need_d >= 0

    def extend(x, y, k):
        if k == 0:
            yield tuple(path)
            return
        for step, nx, ny in ((Step.R, x + 1, y), (Step.L, x - 1, y), (Step.D, x - 1, y + 1)):
            if nx >= 1 and feasible(nx, ny, k - 1):
                path.append(step)
                yield from extend(nx, ny, k - 1)
                path.pop()

    if feasible(1, 0, n):
        yield from extend(1, 0, n)


def walks_of_length(n: int, g: int) -> list[CompletedWalk]:
    return [CompletedWalk(steps) for steps in _step_sequences(n, g)]


def enumerate_walks(max_crit: int, g: int, cap: int = DEFAULT_CAP) -> WalkCatalog:
    """All walks to ``(1, g)`` with at most ``max_crit`` critical points, in canonical order."""
    total = m_number(max_crit, g)
    if total > cap:
        raise ResourceCapError(f"catalog too large: {total} walks exceeds cap {cap}")
    walks = []
    for n in lengths(max_crit, g):
        walks.extend(walks_of_length(n, g))
    return WalkCatalog(g=g, max_len=max_crit - 2, walks=tuple(walks))


def simplest_walks(g: int) -> list[CompletedWalk]:
    """The ``catalan(g)`` shortest walks to ``(1, g)``; they use only R and D steps."""
    return walks_of_length(2 * g, g)


def shifted_positions(w: CompletedWalk, dx: int) -> list[tuple[int, int]]:
    """Positions of ``w`` translated right by ``dx`` (a walk from ``(1 + dx, 0)``)."""
    return [(x + dx, y) for x, y in w.positions]
