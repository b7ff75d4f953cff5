"""Counter-based random streams built on the SplitMix64 mixer.

Every random draw is a pure function of ``(seed, trial, step)``:

* the key of trial ``i`` is output number ``i`` of SplitMix64 seeded with ``seed``;
* draw ``t`` of that trial is output number ``t`` of SplitMix64 seeded with the key.

Trials can therefore be simulated in any order, in any chunking, on any number of
threads, and a single trial can be replayed in isolation.  The scalar functions and
the numpy-vectorised ones produce bit-identical values.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_UNIT = 2.0**-53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int, index: int) -> int:
    """Output number ``index`` (0-based) of SplitMix64 started from ``state``."""
    return mix64(state + (index + 1) * GOLDEN_GAMMA)


def trial_key(seed: int, trial: int) -> int:
    return splitmix64(seed & MASK64, trial)


def uniform(key: int, step: int) -> float:
    """Uniform double in [0, 1) for draw ``step`` of the stream ``key``."""
    return (splitmix64(key, step) >> 11) * _UNIT


# numpy versions; uint64 arithmetic wraps modulo 2**64 as required.

def mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_MUL1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


def trial_keys(seed: int, trials: np.ndarray) -> np.ndarray:
    idx = np.asarray(trials, dtype=np.uint64) + np.uint64(1)
    return mix64_array(np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN_GAMMA))


def uniform_array(keys: np.ndarray, step: int) -> np.ndarray:
    inc = np.uint64(((step + 1) * GOLDEN_GAMMA) & MASK64)
    bits = mix64_array(keys + inc)
    return (bits >> np.uint64(11)).astype(np.float64) * _UNIT
