"""Two-photon interferometry on beam splitters.

Submodules: ``optics`` (transfer matrices), ``circuit`` (text circuit
language), ``hom`` (analytic coincidence and spectral averaging),
``cascade`` (cascaded-splitter Monte Carlo), ``poisson`` (mean photon
number selection), ``cli``.
"""
from . import _backend
from .optics import FieldVector, TransferMatrix, apply, beam_splitter, compose, intensities, phase_shifter

BACKEND = _backend.NAME

__all__ = [
    "BACKEND",
    "FieldVector",
    "TransferMatrix",
    "apply",
    "beam_splitter",
    "compose",
    "intensities",
    "phase_shifter",
]
__version__ = "0.1.0"
