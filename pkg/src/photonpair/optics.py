"""Mode transfer matrices for lossless linear optics.

Fields are column vectors of complex amplitudes, one per spatial mode.
A balanced beam splitter acting on modes ``(i, j)`` is the symmetric
unitary ``(1/sqrt(2)) [[1, i], [i, 1]]``: the reflected field picks up a
quarter-wave phase relative to the transmitted one. Phase shifters are
diagonal. Networks are built by composing elements in the order light
traverses them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

UNITARITY_TOL = 1e-12

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class DimensionError(ValueError):
    """Mode counts of two operands disagree."""


class ModeIndexError(IndexError):
    """A mode index falls outside ``[0, n)`` or an element needs distinct modes."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FieldVector:
    """Complex amplitudes over ``n`` modes (0-based)."""

    modes: np.ndarray

    def __post_init__(self):
        a = np.array(self.modes, dtype=complex).reshape(-1)
        if a.size < 1:
            raise DimensionError("a field vector needs at least one mode")
        if not np.all(np.isfinite(a)):
            raise ValueError("field amplitudes must be finite")
        object.__setattr__(self, "modes", _readonly(a))

    @classmethod
    def of(cls, *amplitudes: complex) -> "FieldVector":
        return cls(np.array(amplitudes, dtype=complex))

    def __len__(self) -> int:
        return self.modes.size

    def __getitem__(self, k: int) -> complex:
        return complex(self.modes[k])

    def __iter__(self):
        return (complex(z) for z in self.modes)

    def __repr__(self) -> str:
        return f"FieldVector({list(self)!r})"

    def total_intensity(self) -> float:
        return float(np.sum(intensities(self)))


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """An ``n x n`` unitary acting on column field vectors."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionError(f"transfer matrix must be square and non-empty, got shape {a.shape}")
        object.__setattr__(self, "entries", _readonly(a))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def unitarity_error(self) -> float:
        """Max-norm of ``T^dagger T - I``."""
        t = self.entries
        return float(np.max(np.abs(t.conj().T @ t - np.eye(self.n))))

    def is_unitary(self, tol: float = UNITARITY_TOL) -> bool:
        return self.unitarity_error() < tol

    def block(self, i: int, j: int) -> np.ndarray:
        """The 2x2 sub-matrix on rows/columns ``(i, j)``."""
        idx = [i, j]
        return self.entries[np.ix_(idx, idx)]

    def __matmul__(self, other):
        # Operator form follows matrix algebra: ``second @ first``.
        if isinstance(other, TransferMatrix):
            return compose(other, self)
        if isinstance(other, FieldVector):
            return apply(self, other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"TransferMatrix(n={self.n})"


def _check_mode(n: int, k: int, name: str = "index") -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n!r}")
    if not isinstance(k, (int, np.integer)) or not 0 <= k < n:
        raise ModeIndexError(f"mode {name} {k!r} out of range for {n} modes")


def identity(n: int) -> TransferMatrix:
    if n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n!r}")
    return TransferMatrix(np.eye(n, dtype=complex))


def beam_splitter(n: int, i: int, j: int) -> TransferMatrix:
    """Balanced beam splitter between modes ``i`` and ``j``, identity elsewhere."""
    _check_mode(n, i, "index i")
    _check_mode(n, j, "index j")
    if i == j:
        raise ModeIndexError(f"beam splitter needs two distinct modes, got i = j = {i}")
    t = np.eye(n, dtype=complex)
    t[i, i] = t[j, j] = _INV_SQRT2
    t[i, j] = t[j, i] = 1j * _INV_SQRT2
    return TransferMatrix(t)


def phase_shifter(n: int, i: int, phi: float) -> TransferMatrix:
    """Multiply mode ``i`` by ``exp(1j * phi)``."""
    _check_mode(n, i)
    if not np.isfinite(phi):
        raise ValueError(f"phase must be finite, got {phi!r}")
    t = np.eye(n, dtype=complex)
    t[i, i] = np.exp(1j * float(phi))
    return TransferMatrix(t)


def compose(first: TransferMatrix, second: TransferMatrix) -> TransferMatrix:
    """Network that applies ``first`` then ``second`` (matrix ``second @ first``)."""
    if first.n != second.n:
        raise DimensionError(f"cannot compose {first.n}-mode and {second.n}-mode matrices")
    return TransferMatrix(second.entries @ first.entries)


def chain(elements: Iterable[TransferMatrix], n: int | None = None) -> TransferMatrix:
    """Compose elements in traversal order; an empty chain needs ``n``."""
    out = None
    for t in elements:
        out = t if out is None else compose(out, t)
    if out is None:
        if n is None:
            raise ValueError("empty chain needs an explicit mode count")
        return identity(n)
    if n is not None and out.n != n:
        raise DimensionError(f"chain acts on {out.n} modes, expected {n}")
    return out


def apply(t: TransferMatrix, field: FieldVector | Sequence[complex]) -> FieldVector:
    if not isinstance(field, FieldVector):
        field = FieldVector(field)
    if len(field) != t.n:
        raise DimensionError(
            f"input has {len(field)} modes but the transfer matrix acts on {t.n}"
        )
    return FieldVector(t.entries @ field.modes)


def intensities(field: FieldVector | Sequence[complex]) -> np.ndarray:
    """``|E_k|^2`` for each mode."""
    a = field.modes if isinstance(field, FieldVector) else np.asarray(field, dtype=complex)
    return a.real**2 + a.imag**2
