"""Ordered critical-point skeletons of the Morse functions built from a walk.

A skeleton records only the order of critical-point types.  It stands for every
Morse function sharing the walk: where each piece is attached is left open.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .lattice_walk import ORIGIN, CompletedWalk, Point, Step


class CriticalEvent(enum.Enum):
    MINIMUM = "min"
    PANTS_UP = "pants_up"  # upside-down pants: one circle splits into two
    MAXIMUM = "max"
    PANTS_DOWN = "pants_down"  # usual pants: two circles merge, genus + 1

    @property
    def index(self) -> int:
        return _INDEX[self]


_INDEX = {
    CriticalEvent.MINIMUM: 0,
    CriticalEvent.PANTS_UP: 1,
    CriticalEvent.MAXIMUM: 2,
    CriticalEvent.PANTS_DOWN: 1,
}
_FROM_STEP = {
    Step.R: CriticalEvent.PANTS_UP,
    Step.L: CriticalEvent.MAXIMUM,
    Step.D: CriticalEvent.PANTS_DOWN,
}
# change of (circles, genus) caused by each non-minimum event
_EFFECT = {
    CriticalEvent.PANTS_UP: (1, 0),
    CriticalEvent.MAXIMUM: (-1, 0),
    CriticalEvent.PANTS_DOWN: (-1, 1),
}


@dataclass(frozen=True)
class MorseSkeleton:
    events: tuple[CriticalEvent, ...]
    n: int
    g: int

    def __post_init__(self):
        ev = tuple(self.events)
        object.__setattr__(self, "events", ev)
        if len(ev) != self.n + 2 or self.n % 2:
            raise ValueError(f"skeleton of a length-{self.n} walk needs {self.n + 2} events, got {len(ev)}")
        if ev[0] is not CriticalEvent.MINIMUM or ev.count(CriticalEvent.MINIMUM) != 1:
            raise ValueError("a skeleton starts with its only minimum")
        if ev[-1] is not CriticalEvent.MAXIMUM:
            raise ValueError("a skeleton ends with a maximum")
        if ev.count(CriticalEvent.PANTS_DOWN) != self.g:
            raise ValueError(f"genus {self.g} does not match {ev.count(CriticalEvent.PANTS_DOWN)} usual pants")
        if ev.count(CriticalEvent.PANTS_UP) != self.n // 2:
            raise ValueError("a skeleton has n/2 upside-down pants")
        if ev.count(CriticalEvent.MAXIMUM) != self.n // 2 - self.g + 1:
            raise ValueError("a skeleton has n/2 - g + 1 maxima")
        circles = 1
        for e in ev[1:-1]:
            circles += _EFFECT[e][0]
            if circles < 1:
                raise ValueError("surface closes up before the final maximum")
        if circles != 1:
            raise ValueError("the final maximum must cap a single boundary circle")

    def to_json(self) -> dict:
        return {
            "events": [e.value for e in self.events],
            "genus": self.g,
            "critical_points": len(self.events),
        }


class TopoInvariants(NamedTuple):
    critical_points: int
    genus: int
    local_maxima: int
    cobordism_class: int
    index_one: int
    euler_characteristic: int


def skeleton_from_walk(w: CompletedWalk) -> MorseSkeleton:
    events = [CriticalEvent.MINIMUM]
    events.extend(_FROM_STEP[s] for s in w.steps)
    events.append(CriticalEvent.MAXIMUM)
    return MorseSkeleton(tuple(events), w.n, w.g)


def invariants_of(sk: MorseSkeleton) -> TopoInvariants:
    """Counting invariants of a skeleton.

    The Euler characteristic is the alternating count of critical points by index;
    the cobordism class is ``#maxima - #minima`` with exactly one minimum.
    """
    maxima = sk.events.count(CriticalEvent.MAXIMUM)
    index_one = sk.events.count(CriticalEvent.PANTS_UP) + sk.events.count(CriticalEvent.PANTS_DOWN)
    return TopoInvariants(
        critical_points=sk.n + 2,
        genus=sk.events.count(CriticalEvent.PANTS_DOWN),
        local_maxima=maxima,
        cobordism_class=maxima - 1,
        index_one=index_one,
        euler_characteristic=1 - index_one + maxima,
    )


def boundary_profile(sk: MorseSkeleton) -> list[Point]:
    """(circles, genus) after the minimum and after each event except the final maximum."""
    x, y = ORIGIN
    profile = [ORIGIN]
    for e in sk.events[1:-1]:
        dx, dy = _EFFECT[e]
        x, y = x + dx, y + dy
        profile.append(Point(x, y))
    return profile
