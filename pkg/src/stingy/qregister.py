"""Dense n-qubit states, partial traces and preferred product bases.

Qubit 0 is the most significant bit of the computational index, so the
basis state ``|q0 q1 ... q_{n-1}>`` has index ``q0 * 2**(n-1) + ... + q_{n-1}``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadTrace,
    DimensionMismatch,
    FullTrace,
    IndexOutOfRange,
    NotHermitian,
    NotNormalized,
    NotOrthonormal,
    NotPSD,
    RegisterTooLarge,
    SubsetMismatch,
    ValidationError,
)

MAX_QUBITS = int(os.environ.get("STINGY_MAX_QUBITS", "12"))

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
NORM_TOL = 1e-12
ORTHO_TOL = 1e-12


def _check_register(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"qubit count must be a positive integer, got {n!r}")
    if n > MAX_QUBITS:
        raise RegisterTooLarge(f"{n} qubits exceeds the register cap of {MAX_QUBITS}")
    return int(n)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


def _infer_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density operator on ``n`` qubits.

    Construction checks Hermiticity, unit trace and positivity; the stored
    array is a read-only copy.
    """

    data: np.ndarray
    n: int

    def __post_init__(self):
        n = _check_register(self.n)
        data = np.asarray(self.data, dtype=complex)
        dim = 2**n
        if data.shape != (dim, dim):
            raise DimensionMismatch(
                f"expected a {dim}x{dim} matrix for {n} qubits, got shape {data.shape}"
            )
        herm_err = float(np.max(np.abs(data - data.conj().T)))
        if herm_err > HERMITIAN_TOL:
            raise NotHermitian(f"max |rho - rho^dagger| entry is {herm_err:.3g}")
        trace = complex(np.trace(data))
        if abs(trace - 1.0) > TRACE_TOL:
            raise BadTrace(f"trace is {trace.real:.12g}{trace.imag:+.3g}j, expected 1")
        min_eig = float(np.linalg.eigvalsh(data)[0])
        if min_eig < -PSD_TOL:
            raise NotPSD(f"smallest eigenvalue is {min_eig:.3g}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "data", _frozen(data))

    @property
    def dim(self) -> int:
        return 2**self.n

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.data, dtype=dtype)

    def allclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        return self.n == other.n and np.allclose(self.data, other.data, rtol=0, atol=atol)


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        n = _check_register(self.n)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**n,):
            raise DimensionMismatch(
                f"expected {2**n} amplitudes for {n} qubits, got shape {amps.shape}"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared norm is {norm_sq:.15g}, expected 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitudes", _frozen(amps))


@dataclass(frozen=True)
class QubitSubset:
    """Qubits lost from an ``n``-qubit register; ``lost`` is stored sorted."""

    n: int
    lost: tuple

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValidationError(f"register size must be a positive integer, got {self.n!r}")
        lost = tuple(int(q) for q in self.lost)
        if len(set(lost)) != len(lost):
            raise ValidationError(f"lost qubits must be distinct, got {lost}")
        bad = [q for q in lost if not 0 <= q < self.n]
        if bad:
            raise IndexOutOfRange(f"lost qubits {bad} outside [0, {self.n})")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "lost", tuple(sorted(lost)))

    @property
    def m(self) -> int:
        return len(self.lost)

    @property
    def kept(self) -> tuple:
        return tuple(q for q in range(self.n) if q not in self.lost)


@dataclass(frozen=True, eq=False)
class ProductBasis:
    """Preferred product basis.

    ``local_bases[k, b]`` is the single-qubit vector that qubit ``k`` takes
    when bit ``b`` of the basis index is set (``b`` in {0, 1}).
    """

    local_bases: np.ndarray
    n: int

    def __post_init__(self):
        n = _check_register(self.n)
        local = np.asarray(self.local_bases, dtype=complex)
        if local.shape != (n, 2, 2):
            raise DimensionMismatch(f"expected local bases of shape ({n}, 2, 2), got {local.shape}")
        for k in range(n):
            gram = local[k].conj() @ local[k].T
            err = float(np.max(np.abs(gram - np.eye(2))))
            if err > ORTHO_TOL:
                raise NotOrthonormal(f"local basis of qubit {k} deviates from orthonormal by {err:.3g}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "local_bases", _frozen(local))

    @classmethod
    def computational(cls, n: int) -> "ProductBasis":
        return cls(np.tile(np.eye(2, dtype=complex), (n, 1, 1)), n)

    @classmethod
    def hadamard(cls, n: int) -> "ProductBasis":
        h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        return cls(np.tile(h, (n, 1, 1)), n)

    @classmethod
    def from_unitaries(cls, unitaries: Sequence[np.ndarray]) -> "ProductBasis":
        """Basis whose qubit-``k`` vectors are the columns of ``unitaries[k]``."""
        local = np.stack([np.asarray(u, dtype=complex).T for u in unitaries])
        return cls(local, len(local))

    def rotated(self, unitaries: Sequence[np.ndarray]) -> "ProductBasis":
        """Apply ``unitaries[k]`` to both local vectors of qubit ``k``."""
        local = np.stack([self.local_bases[k] @ np.asarray(u).T for k, u in enumerate(unitaries)])
        return ProductBasis(local, self.n)

    def permuted(self, perm: Sequence[int]) -> "ProductBasis":
        """New basis where qubit ``k`` carries old qubit ``perm[k]``'s local basis."""
        return ProductBasis(self.local_bases[list(perm)], self.n)


def make_density(entries, n: int | None = None) -> DensityMatrix:
    data = np.asarray(entries, dtype=complex)
    if data.ndim != 2 or data.shape[0] != data.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {data.shape}")
    if n is None:
        n = _infer_qubits(data.shape[0])
    return DensityMatrix(data, n)


def make_pure(amplitudes, n: int | None = None) -> PureState:
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {amps.shape}")
    if n is None:
        n = _infer_qubits(amps.shape[0])
    return PureState(amps, n)


def pure_to_density(psi: PureState) -> DensityMatrix:
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.n)


def _as_subset(subset, n: int) -> QubitSubset:
    if isinstance(subset, QubitSubset):
        return subset
    return QubitSubset(n, tuple(subset))


def trace_out(data: np.ndarray, n: int, lost: Iterable[int]) -> np.ndarray:
    """Array-level partial trace; no validation. Kept qubits stay in ascending order."""
    lost = sorted(lost)
    if not lost:
        return np.asarray(data)
    kept = [q for q in range(n) if q not in lost]
    dk, dl = 2 ** len(kept), 2 ** len(lost)
    t = np.asarray(data).reshape((2,) * (2 * n))
    axes = kept + lost + [n + q for q in kept] + [n + q for q in lost]
    t = t.transpose(axes).reshape(dk, dl, dk, dl)
    return np.einsum("ajbj->ab", t)


def partial_trace(rho: DensityMatrix, subset) -> DensityMatrix:
    """Reduced state on the qubits not in ``subset``.

    ``subset`` may be a :class:`QubitSubset` or any iterable of qubit indices.
    Tracing out every qubit raises :class:`FullTrace`; callers deal with
    ``m == n`` themselves.
    """
    subset = _as_subset(subset, rho.n)
    if subset.n != rho.n:
        raise SubsetMismatch(f"subset is for {subset.n} qubits, state has {rho.n}")
    if subset.m == rho.n:
        raise FullTrace(f"cannot trace out all {rho.n} qubits")
    return DensityMatrix(trace_out(rho.data, rho.n, subset.lost), rho.n - subset.m)


def index_bits(i: int, width: int) -> tuple:
    """Bits of ``i``, most significant first."""
    return tuple((i >> (width - 1 - k)) & 1 for k in range(width))


def _product_vector(vectors) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for v in vectors:
        out = np.kron(out, v)
    return out


def basis_state(basis: ProductBasis, i: int) -> PureState:
    if not 0 <= i < 2**basis.n:
        raise IndexOutOfRange(f"basis index {i} outside [0, {2**basis.n})")
    bits = index_bits(int(i), basis.n)
    return PureState(_product_vector(basis.local_bases[k, b] for k, b in enumerate(bits)), basis.n)


def _kept_bits_tuple(kept_bits, width: int) -> tuple:
    if isinstance(kept_bits, (int, np.integer)):
        if not 0 <= kept_bits < 2**width:
            raise IndexOutOfRange(f"kept-bits value {kept_bits} outside [0, {2**width})")
        return index_bits(int(kept_bits), width)
    bits = tuple(int(b) for b in kept_bits)
    if len(bits) != width:
        raise SubsetMismatch(f"need {width} kept bits, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValidationError(f"kept bits must be 0 or 1, got {bits}")
    return bits


def reduced_basis_state(basis: ProductBasis, subset, kept_bits) -> DensityMatrix:
    """Partial trace of a preferred basis state, computed in closed form.

    Tracing out qubits of a product state leaves the product of the kept
    local vectors, so only the bits on kept qubits matter. ``kept_bits`` is a
    bit sequence ordered like ``subset.kept`` or an integer with the first
    kept qubit as its most significant bit.
    """
    subset = _as_subset(subset, basis.n)
    if subset.n != basis.n:
        raise SubsetMismatch(f"subset is for {subset.n} qubits, basis has {basis.n}")
    kept = subset.kept
    if not kept:
        raise FullTrace("no qubits left after the loss")
    bits = _kept_bits_tuple(kept_bits, len(kept))
    v = _product_vector(basis.local_bases[q, b] for q, b in zip(kept, bits))
    return DensityMatrix(np.outer(v, v.conj()), len(kept))


def kept_basis_vectors(basis: ProductBasis, subset: QubitSubset) -> np.ndarray:
    """All reduced basis vectors for ``subset``, row ``j`` matching kept-bits value ``j``."""
    out = np.ones((1, 1), dtype=complex)
    for q in subset.kept:
        out = np.einsum("ai,bj->abij", out, basis.local_bases[q]).reshape(
            out.shape[0] * 2, out.shape[1] * 2
        )
    return out


def tensor(*states: DensityMatrix) -> DensityMatrix:
    data = np.ones((1, 1), dtype=complex)
    for s in states:
        data = np.kron(data, s.data)
    return DensityMatrix(data, sum(s.n for s in states))


def permute_qubits(rho: DensityMatrix, perm: Sequence[int]) -> DensityMatrix:
    """Relabel wires: qubit ``k`` of the result is qubit ``perm[k]`` of ``rho``."""
    n = rho.n
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValidationError(f"{perm} is not a permutation of range({n})")
    t = rho.data.reshape((2,) * (2 * n)).transpose(perm + [n + p for p in perm])
    return DensityMatrix(t.reshape(2**n, 2**n), n)


def maximally_mixed(n: int) -> DensityMatrix:
    return DensityMatrix(np.eye(2**n, dtype=complex) / 2**n, n)


def bell_state() -> PureState:
    return PureState(np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2), 2)
