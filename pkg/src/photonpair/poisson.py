"""Photon-number statistics of an attenuated laser.

A coincidence test wants two-photon events; three-or-more photon events
contaminate it. For Poisson light the contamination ratio
``P(n >= 3) / P(n >= 2)`` grows with the mean photon number, roughly as
``mu / 3`` for small ``mu``, so a small enough mean keeps it below a target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import poisson


@dataclass(frozen=True)
class PoissonReport:
    mean: float
    p: np.ndarray
    tail: float
    contamination: float

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "n_max": len(self.p) - 1,
            "p_n": [float(v) for v in self.p],
            "tail": self.tail,
            "contamination": self.contamination,
        }


def contamination(mu: float) -> float:
    """``P(n >= 3) / P(n >= 2)``; survival functions avoid cancellation at small ``mu``."""
    if not mu > 0:
        raise ValueError(f"mean photon number must be positive, got {mu!r}")
    ge2 = poisson.sf(1, mu)
    if ge2 == 0.0:
        # Underflow regime; leading term of the ratio.
        return mu / 3.0
    return float(poisson.sf(2, mu) / ge2)


def poisson_stats(mu: float, n_max: int = 20) -> PoissonReport:
    if not (mu > 0 and math.isfinite(mu)):
        raise ValueError(f"mean photon number must be positive and finite, got {mu!r}")
    if n_max < 3:
        raise ValueError(f"n_max must be >= 3, got {n_max!r}")
    p = poisson.pmf(np.arange(n_max + 1), mu)
    return PoissonReport(float(mu), p, float(poisson.sf(n_max, mu)), contamination(mu))


def recommend_mean_photon(epsilon: float, rtol: float = 1e-9) -> float:
    """Largest mean photon number whose contamination stays <= ``epsilon``.

    Bisection on the (increasing) contamination ratio; the lower end of the
    final bracket is returned so the bound always holds.
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    lo, hi = 0.0, 3.0 * epsilon
    while contamination(hi) <= epsilon:
        lo, hi = hi, 2.0 * hi
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if contamination(mid) <= epsilon:
            lo = mid
        else:
            hi = mid
    return lo
