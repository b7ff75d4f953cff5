"""Exact length/genus distributions and expectations, with Monte Carlo cross-checks.

All closed forms return :class:`fractions.Fraction`.  The projection of a walk onto
its first coordinate is a simple random walk that moves up with probability
``p_r`` and down with ``p_l + p_d``; the walk length is one less than its first
passage time from 1 to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import PreconditionError
from .lattice_walk import StepProbabilities, simulate_batch

INFINITE = math.inf

STATISTICS = ("critical_points", "genus", "local_maxima", "cobordism", "index_one")


def _check_length(n: int) -> None:
    if n < 0 or n % 2:
        raise PreconditionError(f"walk length must be even and >= 0, got {n}")


def ballot(n: int) -> int:
    """Number of length-``n`` first-coordinate paths from 1 that stay >= 1 and end at 1."""
    _check_length(n)
    return comb(n + 1, (n + 2) // 2) // (n + 1)


def p_length(n: int, probs: StepProbabilities) -> Fraction:
    """Probability that the walk completes after exactly ``n`` steps (``n + 2`` critical points)."""
    _check_length(n)
    return ballot(n) * probs.p_r ** (n // 2) * probs.p_exit ** ((n + 2) // 2)


def p_length_genus(n: int, y: int, probs: StepProbabilities) -> Fraction:
    """Probability that the walk completes after ``n`` steps at height ``y``."""
    _check_length(n)
    if not 0 <= y <= n // 2:
        raise PreconditionError(f"genus must lie in [0, n/2] = [0, {n // 2}], got {y}")
    half = n // 2
    return (ballot(n) * probs.p_r**half * probs.p_exit
            * comb(half, y) * probs.p_l ** (half - y) * probs.p_d**y)


def _positive_drift(probs: StepProbabilities) -> Fraction:
    drift = probs.drift
    if drift <= 0:
        raise PreconditionError(
            f"requires p_l + p_d > p_r (got p_l + p_d - p_r = {drift})")
    return drift


def expected_critical_points(probs: StepProbabilities) -> Fraction | float:
    """``1 + 1/(p_l + p_d - p_r)``; :data:`INFINITE` at zero drift."""
    drift = probs.drift
    if drift < 0:
        raise PreconditionError(f"requires p_l + p_d >= p_r (got p_l + p_d - p_r = {drift})")
    if drift == 0:
        return INFINITE
    return 1 + 1 / drift


def expected_local_maxima(probs: StepProbabilities) -> Fraction:
    drift = _positive_drift(probs)
    p_l, p_d = probs.p_l, probs.p_d
    return (p_d * drift + p_l / 2) / (probs.p_exit * drift)


def expected_cobordism(probs: StepProbabilities) -> Fraction:
    drift = _positive_drift(probs)
    p_l = probs.p_l
    return (p_l / 2 - p_l * drift) / (probs.p_exit * drift)


def expected_index_one(probs: StepProbabilities) -> Fraction:
    drift = _positive_drift(probs)
    p_r, p_l, p_d = probs.p_r, probs.p_l, probs.p_d
    return (p_l / 2 + p_d * (1 - p_l - p_d + p_r)) / (probs.p_exit * drift)


def expected_genus(probs: StepProbabilities) -> Fraction:
    drift = _positive_drift(probs)
    p_l, p_d = probs.p_l, probs.p_d
    return (p_d + (p_l - p_d) * drift) / (2 * probs.p_exit * drift)


def mean_half_length(probs: StepProbabilities) -> Fraction:
    """``E[n/2]``: the completed walk takes ``n + 1`` steps (exit included) with mean ``1/drift``."""
    drift = _positive_drift(probs)
    return (1 - drift) / (2 * drift)


def summed_expectations(probs: StepProbabilities) -> dict[str, Fraction]:
    """Means obtained by summing each statistic against the exact distribution.

    Given the length ``n``, the genus is binomial with ``n/2`` trials and success
    probability ``p_d / (p_l + p_d)``, so every mean is affine in ``E[n/2]``.
    For ``genus``, ``local_maxima``, ``cobordism`` and ``index_one`` these differ from
    :func:`expected_genus` and friends; the simulated means agree with these.
    """
    half = mean_half_length(probs)
    share_d = probs.p_d / probs.p_exit
    share_l = probs.p_l / probs.p_exit
    return {
        "critical_points": 2 * half + 2,
        "genus": half * share_d,
        "local_maxima": 1 + half * share_l,
        "cobordism": half * share_l,
        "index_one": half * (1 + share_d),
    }


def closed_forms(probs: StepProbabilities) -> dict[str, Fraction]:
    """Every closed-form expectation, keyed like :data:`STATISTICS`."""
    return {
        "critical_points": expected_critical_points(probs),
        "genus": expected_genus(probs),
        "local_maxima": expected_local_maxima(probs),
        "cobordism": expected_cobordism(probs),
        "index_one": expected_index_one(probs),
    }


@dataclass(frozen=True)
class MomentReport:
    """Sample mean over completed trials.

    ``std_error`` is the sample standard deviation (ddof=1) over ``sqrt(m)`` for
    ``m`` completed trials; it is 0 when ``m == 1`` and ``estimate`` is NaN when
    ``m == 0``.
    """

    estimate: float
    std_error: float
    trials: int
    censored: int


def _report(values: np.ndarray, trials: int, censored: int) -> MomentReport:
    m = values.size
    if m == 0:
        return MomentReport(math.nan, math.nan, trials, censored)
    mean = float(values.mean())
    if m == 1:
        return MomentReport(mean, 0.0, trials, censored)
    return MomentReport(mean, float(values.std(ddof=1) / math.sqrt(m)), trials, censored)


def monte_carlo_moments(probs: StepProbabilities, trials: int, seed: int, max_steps: int,
                        threads: int = 1) -> dict[str, MomentReport]:
    batch = simulate_batch(probs, seed, trials, max_steps, threads=threads)
    ok = batch.completed
    censored = int(trials - ok.sum())
    n = batch.length[ok].astype(np.float64)
    g = batch.genus[ok].astype(np.float64)
    maxima = n / 2 - g + 1
    samples = {
        "critical_points": n + 2,
        "genus": g,
        "local_maxima": maxima,
        "cobordism": maxima - 1,
        "index_one": n / 2 + g,
    }
    return {name: _report(v, trials, censored) for name, v in samples.items()}


def length_table(max_len: int, probs: StepProbabilities, by_genus: bool = False) -> list[dict]:
    """Rows ``{n, [y,] probability}`` for all even ``n <= max_len``, plus a running total."""
    rows = []
    cumulative = Fraction(0)
    for n in range(0, max_len + 1, 2):
        p = p_length(n, probs)
        cumulative += p
        if by_genus:
            for y in range(n // 2 + 1):
                rows.append({"n": n, "y": y, "probability": p_length_genus(n, y, probs),
                             "cumulative": cumulative})
        else:
            rows.append({"n": n, "probability": p, "cumulative": cumulative})
    return rows
