"""Counter-based random streams.

Every draw is a pure function of ``(key, counter)`` so independent work
items (one walk, one training token) get their own stream no matter which
thread runs them or in what order.  The mixer is SplitMix64's finalizer.
"""

import numpy as np
from numba import njit

_MASK64 = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True, inline="always")
def mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def stream_key(seed, a, b):
    """Key for the stream identified by ``(seed, a, b)``."""
    k = mix64(seed + _GOLDEN)
    k = mix64(k ^ (np.uint64(a) * _GOLDEN + np.uint64(1)))
    return mix64(k ^ (np.uint64(b) * _GOLDEN + np.uint64(2)))


@njit(cache=True, inline="always")
def uniform(key, counter):
    """Draw in [0, 1) with 53 random bits."""
    x = mix64(key + np.uint64(counter) * _GOLDEN)
    return np.float64(x >> np.uint64(11)) * (1.0 / 9007199254740992.0)


def as_seed(seed: int) -> np.uint64:
    return np.uint64(int(seed) & _MASK64)
