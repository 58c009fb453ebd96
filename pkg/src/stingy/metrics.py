"""Distances on density operators normalized to the unit interval."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, UnknownDistance
from .qregister import DensityMatrix


def _pair(rho, sigma):
    a = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    b = sigma.data if isinstance(sigma, DensityMatrix) else np.asarray(sigma, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare shapes {a.shape} and {b.shape}")
    return a, b


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, float(x)))


def trace_distance(rho, sigma) -> float:
    """Half the sum of absolute eigenvalues of ``rho - sigma``.

    Accepts :class:`DensityMatrix` values or raw square arrays.
    """
    a, b = _pair(rho, sigma)
    # fixed argument order keeps the result bit-for-bit symmetric
    if a.tobytes() > b.tobytes():
        a, b = b, a
    diff = a - b
    diff = (diff + diff.conj().T) / 2
    return _clamp(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def hs_distance_normalized(rho, sigma) -> float:
    """Frobenius norm of ``rho - sigma`` divided by sqrt(2)."""
    a, b = _pair(rho, sigma)
    return _clamp(np.linalg.norm(a - b) / np.sqrt(2))


@dataclass(frozen=True)
class DistanceMeasure:
    identifier: str
    func: Callable[..., float]

    def __call__(self, rho, sigma) -> float:
        return self.func(rho, sigma)


TRACE = DistanceMeasure("trace", trace_distance)
HILBERT_SCHMIDT = DistanceMeasure("hilbert-schmidt-normalized", hs_distance_normalized)

_ALIASES = {
    "trace": TRACE,
    "hs": HILBERT_SCHMIDT,
    "hilbert-schmidt-normalized": HILBERT_SCHMIDT,
}


def get_distance(identifier) -> DistanceMeasure:
    if isinstance(identifier, DistanceMeasure):
        return identifier
    try:
        return _ALIASES[identifier]
    except (KeyError, TypeError):
        raise UnknownDistance(
            f"unknown distance {identifier!r}; expected one of {sorted(_ALIASES)}"
        ) from None
