"""Random states, unitaries and product bases.

All samplers take a ``numpy.random.Generator`` so callers control seeding.
"""

from __future__ import annotations

import numpy as np

from .qregister import DensityMatrix, ProductBasis, PureState


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with the phase fix."""
    q, r = np.linalg.qr(_complex_gaussian(rng, (dim, dim)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def ginibre_density(n: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Density matrix ``G G^dagger / tr(G G^dagger)``; full rank gives the Hilbert-Schmidt measure."""
    dim = 2**n
    g = _complex_gaussian(rng, (dim, rank or dim))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real, n)


def random_pure(n: int, rng: np.random.Generator) -> PureState:
    v = _complex_gaussian(rng, 2**n)
    return PureState(v / np.linalg.norm(v), n)


def random_product_basis(n: int, rng: np.random.Generator) -> ProductBasis:
    return ProductBasis.from_unitaries([random_unitary(2, rng) for _ in range(n)])
