# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must agree with ``_fallback`` (bit-exact for tallies)."""
import numpy as np

from libc.math cimport sin, M_PI
from libc.stdint cimport int64_t, uint64_t

cdef uint64_t GOLDEN = <uint64_t>0x9E3779B97F4A7C15ULL


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


def cascade_counts(int mode, uint64_t seed, int64_t start, int64_t stop):
    """Tally trials ``[start, stop)``; returns (singles[4], pairs[6]) as int64 arrays.

    ``mode``: 0 bunching, 1 independent, 2 antibunching. Bits 63..60 of each
    trial word: side of photon 1, side of photon 2 (independent only), second
    layer exit of photon 1, exit of photon 2.
    """
    cdef int64_t singles[4]
    cdef int64_t pairs[6]
    cdef int pair_a[6]
    cdef int pair_b[6]
    cdef int64_t i
    cdef uint64_t w
    cdef int s1, s2, mask, k
    pair_a[:] = [0, 0, 0, 1, 1, 2]
    pair_b[:] = [1, 2, 3, 2, 3, 3]
    for k in range(4):
        singles[k] = 0
    for k in range(6):
        pairs[k] = 0
    with nogil:
        for i in range(start, stop):
            w = _mix(seed + <uint64_t>(i + 1) * GOLDEN)
            s1 = <int>(w >> 63)
            if mode == 0:
                s2 = s1
            elif mode == 1:
                s2 = <int>((w >> 62) & 1)
            else:
                s2 = 1 - s1
            mask = (1 << (2 * s1 + <int>((w >> 61) & 1))) | (1 << (2 * s2 + <int>((w >> 60) & 1)))
            for k in range(4):
                singles[k] += (mask >> k) & 1
            for k in range(6):
                pairs[k] += ((mask >> pair_a[k]) & (mask >> pair_b[k])) & 1
    return (np.array([singles[k] for k in range(4)], dtype=np.int64),
            np.array([pairs[k] for k in range(6)], dtype=np.int64))


def gh_average(double tau, double fc, double width, const double[::1] x, const double[::1] w):
    """Sum of ``w_k sin^2(2 pi (fc + sqrt(2) width x_k) tau)``."""
    cdef Py_ssize_t k, n = x.shape[0]
    cdef double acc = 0.0, s, scale = 1.4142135623730951 * width
    with nogil:
        for k in range(n):
            s = sin(2.0 * M_PI * (fc + scale * x[k]) * tau)
            acc += w[k] * s * s
    return acc
