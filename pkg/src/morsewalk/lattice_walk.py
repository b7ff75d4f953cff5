"""Walks in the quarter lattice ``S = {(x, y) : x >= 1, y >= 0}``.

``x`` counts the boundary circles of the surface built so far and ``y`` its genus.
A walk starts at ``(1, 0)``; it is *completed* at ``(1, g)`` when the next drawn step
(Left or Diag) would leave ``S``.  That exiting step is not stored: it is the
terminal event that caps the surface with its last maximum.
"""

from __future__ import annotations

import enum
import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from . import rng
from .errors import PreconditionError


class Step(enum.Enum):
    R = "R"
    L = "L"
    D = "D"

    @property
    def delta(self) -> tuple[int, int]:
        return _DELTAS[self]


_DELTAS = {Step.R: (1, 0), Step.L: (-1, 0), Step.D: (-1, 1)}
# canonical order used for catalogs: R < L < D
STEP_ORDER = (Step.R, Step.L, Step.D)


class Point(NamedTuple):
    x: int
    y: int


ORIGIN = Point(1, 0)


def apply_step(p: tuple[int, int], s: Step) -> Point:
    dx, dy = _DELTAS[s]
    return Point(p[0] + dx, p[1] + dy)


def in_domain(p: tuple[int, int]) -> bool:
    return p[0] >= 1 and p[1] >= 0


_RATIONAL = re.compile(r"^\s*\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"9/20"`` or ``"1"``; decimal and exponent notation are refused."""
    if not _RATIONAL.match(text):
        raise PreconditionError(f"not an exact rational: {text!r} (use the form p/q)")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise PreconditionError(f"zero denominator in {text!r}") from None


@dataclass(frozen=True)
class StepProbabilities:
    p_r: Fraction
    p_l: Fraction
    p_d: Fraction

    def __post_init__(self):
        for name in ("p_r", "p_l", "p_d"):
            value = getattr(self, name)
            if isinstance(value, float):
                raise PreconditionError(f"{name} must be an exact rational, got float {value!r}")
            value = Fraction(value)
            if value <= 0:
                raise PreconditionError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)
        total = self.p_r + self.p_l + self.p_d
        if total != 1:
            raise PreconditionError(f"probabilities must sum to 1, got {total}")

    @classmethod
    def parse(cls, p_r: str, p_l: str, p_d: str) -> StepProbabilities:
        return cls(parse_rational(p_r), parse_rational(p_l), parse_rational(p_d))

    @classmethod
    def uniform(cls) -> StepProbabilities:
        third = Fraction(1, 3)
        return cls(third, third, third)

    @property
    def p_exit(self) -> Fraction:
        """Probability that a step from ``x = 1`` leaves the domain."""
        return self.p_l + self.p_d

    @property
    def drift(self) -> Fraction:
        """``p_l + p_d - p_r``: the mean decrease of ``x`` per step."""
        return self.p_l + self.p_d - self.p_r

    def as_dict(self) -> dict[str, str]:
        return {"p_r": str(self.p_r), "p_l": str(self.p_l), "p_d": str(self.p_d)}


def _trace(steps) -> tuple[Point, ...]:
    positions = [ORIGIN]
    for s in steps:
        positions.append(apply_step(positions[-1], s))
    return tuple(positions)


@dataclass(frozen=True)
class CompletedWalk:
    steps: tuple[Step, ...]

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        positions = _trace(steps)
        for i, p in enumerate(positions):
            if not in_domain(p):
                raise ValueError(f"walk leaves S at position {i}: {tuple(p)}")
        if positions[-1].x != 1:
            raise ValueError(f"completed walk must end at x = 1, ends at {tuple(positions[-1])}")
        object.__setattr__(self, "_positions", positions)

    @property
    def positions(self) -> tuple[Point, ...]:
        """``S_0 .. S_n``."""
        return self._positions

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def g(self) -> int:
        return self.positions[-1].y

    @property
    def end(self) -> Point:
        return self.positions[-1]

    def __str__(self) -> str:
        return "".join(s.value for s in self.steps)

    @classmethod
    def from_string(cls, text: str) -> CompletedWalk:
        try:
            return cls(tuple(Step(c) for c in text.strip()))
        except ValueError as exc:
            raise PreconditionError(f"invalid walk {text!r}: {exc}") from None

    def to_json(self) -> dict:
        return {"steps": str(self), "n": self.n, "g": self.g}

    @classmethod
    def from_json(cls, data: dict | str) -> CompletedWalk:
        if isinstance(data, str):
            data = json.loads(data)
        walk = cls.from_string(data["steps"])
        if walk.n != data["n"] or walk.g != data["g"]:
            raise PreconditionError(f"walk {data['steps']!r} does not have n={data['n']}, g={data['g']}")
        return walk

    def sort_key(self) -> tuple:
        """Canonical order: by length, then lexicographically with R < L < D."""
        return (self.n, tuple(STEP_ORDER.index(s) for s in self.steps))


@dataclass(frozen=True)
class Completed:
    walk: CompletedWalk


@dataclass(frozen=True)
class Censored:
    steps: tuple[Step, ...]
    position: Point


SimulationOutcome = Union[Completed, Censored]


class StepCounts(NamedTuple):
    r: int
    l: int
    d: int


def step_counts(w: CompletedWalk) -> StepCounts:
    """Tally the steps of ``w`` and check them against the closed forms.

    With ``(x, y)`` the final position: ``r = (n + x - 1) / 2``,
    ``l = (n - x + 1) / 2 - y`` and ``d = y``.
    """
    tally = StepCounts(w.steps.count(Step.R), w.steps.count(Step.L), w.steps.count(Step.D))
    x, y = w.end
    closed = StepCounts((w.n + x - 1) // 2, (w.n - x + 1) // 2 - y, y)
    if tally != closed:
        raise AssertionError(f"step tally {tally} disagrees with closed form {closed} for {w}")
    return tally


def walk_probability(w: CompletedWalk, probs: StepProbabilities) -> Fraction:
    """Exact probability of the walk, including the terminal exit event."""
    r, l, d = step_counts(w)
    return probs.p_r**r * probs.p_l**l * probs.p_d**d * probs.p_exit


def _thresholds(probs: StepProbabilities) -> tuple[float, float]:
    return float(probs.p_r), float(probs.p_r + probs.p_l)


def simulate(probs: StepProbabilities, seed: int, max_steps: int, trial: int = 0) -> SimulationOutcome:
    """Run one walk until it exits ``S`` or ``max_steps`` in-domain steps have been taken.

    The walk is a deterministic function of ``(probs, seed, trial, max_steps)``; trial ``i``
    reproduces trial ``i`` of :func:`simulate_batch` with the same seed.
    """
    if max_steps < 1:
        raise PreconditionError(f"max_steps must be >= 1, got {max_steps}")
    key = rng.trial_key(seed, trial)
    cut_r, cut_l = _thresholds(probs)
    x, y = 1, 0
    steps = []
    for t in range(max_steps):
        u = rng.uniform(key, t)
        if u < cut_r:
            x += 1
            steps.append(Step.R)
            continue
        if x == 1:
            return Completed(CompletedWalk(tuple(steps)))
        x -= 1
        if u < cut_l:
            steps.append(Step.L)
        else:
            y += 1
            steps.append(Step.D)
    return Censored(tuple(steps), Point(x, y))


class BatchResult(NamedTuple):
    """Per-trial summary of a simulated batch, indexed by trial number.

    ``length`` and ``genus`` are the walk length ``n`` and final height ``g``; for
    censored trials they hold the step count and height reached at the cap.
    """

    length: np.ndarray
    genus: np.ndarray
    completed: np.ndarray


def _simulate_chunk(probs, seed, start, stop, max_steps):
    count = stop - start
    keys = rng.trial_keys(seed, np.arange(start, stop, dtype=np.uint64))
    cut_r, cut_l = _thresholds(probs)
    length = np.zeros(count, dtype=np.int64)
    genus = np.zeros(count, dtype=np.int64)
    completed = np.zeros(count, dtype=bool)
    active = np.arange(count)
    x = np.ones(count, dtype=np.int64)
    y = np.zeros(count, dtype=np.int64)
    t = 0
    while active.size and t < max_steps:
        u = rng.uniform_array(keys, t)
        right = u < cut_r
        exiting = ~right & (x == 1)
        if exiting.any():
            done = active[exiting]
            length[done] = t
            genus[done] = y[exiting]
            completed[done] = True
        keep = ~exiting
        active, keys, x, y = active[keep], keys[keep], x[keep], y[keep]
        right, u = right[keep], u[keep]
        x += np.where(right, 1, -1)
        y += u >= cut_l
        t += 1
    # anything still active hit the cap
    length[active] = t
    genus[active] = y
    return length, genus, completed


def simulate_batch(probs: StepProbabilities, seed: int, trials: int, max_steps: int,
                   threads: int = 1, chunk: int = 1 << 16) -> BatchResult:
    """Vectorised equivalent of ``[simulate(probs, seed, max_steps, trial=i) for i in range(trials)]``.

    Only lengths and genera are kept.  Results do not depend on ``threads`` or ``chunk``.
    """
    if trials < 1:
        raise PreconditionError(f"trials must be >= 1, got {trials}")
    if max_steps < 1:
        raise PreconditionError(f"max_steps must be >= 1, got {max_steps}")
    bounds = [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _simulate_chunk(probs, seed, b[0], b[1], max_steps), bounds))
    else:
        parts = [_simulate_chunk(probs, seed, a, b, max_steps) for a, b in bounds]
    return BatchResult(*(np.concatenate(cols) for cols in zip(*parts)))


def simulate_walks(probs: StepProbabilities, seed: int, trials: int, max_steps: int) -> list[SimulationOutcome]:
    return [simulate(probs, seed, max_steps, trial=i) for i in range(trials)]

