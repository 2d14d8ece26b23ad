"""Two-photon interference on a single beam splitter and in a Mach-Zehnder.

Phase model: a pair with detuning ``delta_f`` (Hz) arriving with relative
delay ``tau`` (s) picks up ``phi_rel = 2*pi*delta_f*tau``; the total relative
phase adds the fixed source offset ``delta_phi_prime``. With the offset at
``+-pi/2`` the normalized coincidence ``cos^2(delta_phi)`` becomes
``sin^2(phi_rel)``, which vanishes at zero delay (the HOM dip).

Averaging over a Gaussian detuning spectrum washes the dip out towards the
incoherent level 1/2. ``dip_point`` does the average with Gauss-Hermite
quadrature; ``dip_closed_form`` is the analytic result, kept as an
independent check.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import roots_hermite

from . import _backend

CLASSICAL_BOUND = 0.5
DEFAULT_DELTA_PHI_PRIME = math.pi / 2
DEFAULT_NODES = 64
MIN_NODES = 16
# Node ceiling; beyond this the average is already 1/2 to double precision
# but the rule can no longer resolve the integrand.
MAX_NODES = 1 << 16


class QuadratureResolutionError(ArithmeticError):
    """Delay too long for the node ceiling to resolve the oscillation."""


@dataclass(frozen=True)
class PairPhase:
    phi_rel: float
    delta_phi_prime: float

    @property
    def delta_phi(self) -> float:
        return self.phi_rel + self.delta_phi_prime


@dataclass(frozen=True)
class SpectralProfile:
    """Gaussian detuning distribution, std ``sigma * scale`` around ``center_offset``."""

    sigma: float = 1.0
    scale: float = 1.0
    center_offset: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma!r}")
        if not (0 < self.scale <= 1):
            raise ValueError(f"scale must lie in (0, 1], got {self.scale!r}")
        if not math.isfinite(self.center_offset):
            raise ValueError(f"center_offset must be finite, got {self.center_offset!r}")

    @property
    def width(self) -> float:
        return self.sigma * self.scale


@dataclass
class DipCurve:
    taus: np.ndarray
    series: dict[float, np.ndarray] = field(default_factory=dict)


def bs_pair_intensities(delta_phi: float, i0: float = 1.0) -> tuple[float, float]:
    """Output intensities ``(I_A, I_B) = I0 (1 -+ sin delta_phi)``.

    Port labels follow the published convention. Expanding the symmetric
    beam splitter directly gives the same pair with A and B swapped; the
    coincidence product is unaffected.
    """
    if i0 < 0:
        raise ValueError(f"i0 must be nonnegative, got {i0!r}")
    s = math.sin(delta_phi)
    return i0 * (1.0 - s), i0 * (1.0 + s)


def normalized_coincidence(delta_phi: float) -> float:
    return math.cos(delta_phi) ** 2


def pair_phase(delta_f: float, tau: float, delta_phi_prime: float = DEFAULT_DELTA_PHI_PRIME) -> PairPhase:
    return PairPhase(2.0 * math.pi * delta_f * tau, delta_phi_prime)


def coincidence_surface(delta_f_grid: Sequence[float], tau_grid: Sequence[float]) -> np.ndarray:
    """``R[k, m] = sin^2(2 pi delta_f[k] tau[m])`` (offset fixed at pi/2)."""
    f = np.asarray(delta_f_grid, dtype=float)
    t = np.asarray(tau_grid, dtype=float)
    if f.size == 0 or t.size == 0:
        raise ValueError("detuning and delay grids must be nonempty")
    return np.sin(2.0 * np.pi * np.outer(f, t)) ** 2


@lru_cache(maxsize=32)
def _rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_hermite(n)
    w = w / math.sqrt(math.pi)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def nodes_for(tau: float, profile: SpectralProfile, quadrature_nodes: int = DEFAULT_NODES) -> int:
    """Node count actually used at ``tau``.

    In the Hermite variable the integrand oscillates as ``cos(k x)`` with
    ``k = 4 pi sqrt(2) width |tau|``. An n-point rule integrates that to
    ~1e-12 while ``k**2 <= 2 n``, so the requested count is raised to the
    next power of two meeting that bound.
    """
    k = 4.0 * math.pi * math.sqrt(2.0) * profile.width * abs(tau)
    need = max(int(quadrature_nodes), math.ceil(k * k / 2.0))
    if need <= quadrature_nodes:
        return int(quadrature_nodes)
    n = 1 << (need - 1).bit_length()
    if n > MAX_NODES:
        raise QuadratureResolutionError(
            f"tau={tau!r} with width {profile.width!r} needs {need} nodes (limit {MAX_NODES})"
        )
    return n


def dip_point(
    tau: float,
    profile: SpectralProfile,
    quadrature_nodes: int = DEFAULT_NODES,
    backend: str | None = None,
) -> float:
    """Ensemble-averaged coincidence at delay ``tau``."""
    if quadrature_nodes < MIN_NODES:
        raise ValueError(f"quadrature_nodes must be >= {MIN_NODES}, got {quadrature_nodes}")
    x, w = _rule(nodes_for(tau, profile, quadrature_nodes))
    r = _backend.get(backend).gh_average(float(tau), profile.center_offset, profile.width, x, w)
    return min(max(r, 0.0), 1.0)


def dip_closed_form(tau: float, profile: SpectralProfile) -> float:
    s = profile.width
    envelope = math.exp(-8.0 * math.pi**2 * (s * tau) ** 2)
    return 0.5 * (1.0 - math.cos(4.0 * math.pi * profile.center_offset * tau) * envelope)


def dip_curve(
    tau_grid: Sequence[float],
    profiles: Sequence[SpectralProfile],
    quadrature_nodes: int = DEFAULT_NODES,
    workers: int = 1,
    backend: str | None = None,
) -> DipCurve:
    """One averaged-coincidence series per profile, keyed by its scale.

    Points are computed independently and placed by position, so ``workers``
    does not change the result.
    """
    taus = np.asarray(tau_grid, dtype=float)
    if taus.size == 0 or len(profiles) == 0:
        raise ValueError("tau grid and profile list must be nonempty")
    jobs = [(p, t) for p in profiles for t in taus]

    def one(job):
        p, t = job
        return dip_point(t, p, quadrature_nodes, backend)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, jobs))
    else:
        values = [one(j) for j in jobs]
    out = DipCurve(taus)
    for k, p in enumerate(profiles):
        out.series[p.scale] = np.array(values[k * taus.size:(k + 1) * taus.size])
    return out


def mzi_intensities(phi: float, i0: float = 1.0) -> tuple[float, float]:
    """``(I_alpha, I_beta) = (I0/2)(1 -+ cos phi)`` for light entering one port."""
    if i0 < 0:
        raise ValueError(f"i0 must be nonnegative, got {i0!r}")
    c = math.cos(phi)
    return 0.5 * i0 * (1.0 - c), 0.5 * i0 * (1.0 + c)


def mzi_fields(phi: float, phi_alpha_beta: float = 0.0, e0: complex = 1.0) -> tuple[complex, complex]:
    """Output amplitudes of BS, phase ``phi`` on the lower arm, BS, then ``phi_alpha_beta`` on beta."""
    u = complex(math.cos(phi), math.sin(phi))
    e_alpha = 0.5 * e0 * (1 - u)
    e_beta = 0.5j * e0 * complex(math.cos(phi_alpha_beta), math.sin(phi_alpha_beta)) * (1 + u)
    return e_alpha, e_beta
