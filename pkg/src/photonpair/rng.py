"""SplitMix64 generator, usable as a stream or as a counter-based hash.

The ``k``-th output (0-based) of a stream seeded with ``s`` equals
``mix64(s + (k + 1) * GOLDEN_GAMMA)``, so any trial can be regenerated from
``(seed, trial_index)`` alone. That is what makes Monte Carlo tallies
independent of how trials are scheduled.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def counter_word(seed: int, index: int) -> int:
    """Output number ``index`` of the stream seeded with ``seed``."""
    return mix64((seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        """Uniform double in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))
