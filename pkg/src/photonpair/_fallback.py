"""numpy implementations of the kernels in ``_kernels.pyx``."""
from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_PAIR_A = np.array([0, 0, 0, 1, 1, 2])
_PAIR_B = np.array([1, 2, 3, 2, 3, 3])
_CHUNK = 1 << 18


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def cascade_counts(mode: int, seed: int, start: int, stop: int):
    singles = np.zeros(4, dtype=np.int64)
    pairs = np.zeros(6, dtype=np.int64)
    seed = np.uint64(seed)
    one, two = np.uint64(1), np.uint64(2)
    for lo in range(start, stop, _CHUNK):
        idx = np.arange(lo + 1, min(lo + _CHUNK, stop) + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            w = _mix(seed + idx * _GOLDEN)
        s1 = w >> np.uint64(63)
        if mode == 0:
            s2 = s1
        elif mode == 1:
            s2 = (w >> np.uint64(62)) & one
        else:
            s2 = one - s1
        d1 = two * s1 + ((w >> np.uint64(61)) & one)
        d2 = two * s2 + ((w >> np.uint64(60)) & one)
        mask = (one << d1) | (one << d2)
        clicks = ((mask[:, None] >> np.arange(4, dtype=np.uint64)) & one).astype(bool)
        singles += clicks.sum(axis=0)
        pairs += (clicks[:, _PAIR_A] & clicks[:, _PAIR_B]).sum(axis=0)
    return singles, pairs


def gh_average(tau: float, fc: float, width: float, x: np.ndarray, w: np.ndarray) -> float:
    s = np.sin(2.0 * np.pi * (fc + np.sqrt(2.0) * width * x) * tau)
    return float(np.dot(w, s * s))
