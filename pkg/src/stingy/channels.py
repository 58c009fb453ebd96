"""CPTP maps in Kraus form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import BadParams, DimensionMismatch, NotTracePreserving, UnknownChannel, ValidationError
from .qregister import DensityMatrix, PureState, _check_register

COMPLETENESS_TOL = 1e-9

_PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Channel ``rho -> sum_k K_k rho K_k^dagger`` on ``n`` qubits."""

    kraus: tuple
    n: int

    def __post_init__(self):
        n = _check_register(self.n)
        dim = 2**n
        ops = []
        for k, op in enumerate(self.kraus):
            op = np.array(op, dtype=complex, copy=True)
            if op.shape != (dim, dim):
                raise DimensionMismatch(f"Kraus operator {k} has shape {op.shape}, expected ({dim}, {dim})")
            op.setflags(write=False)
            ops.append(op)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        total = sum(op.conj().T @ op for op in ops)
        dev = float(np.max(np.abs(total - np.eye(dim))))
        if dev > COMPLETENESS_TOL:
            raise NotTracePreserving(f"sum of K^dagger K deviates from identity by {dev:.3g}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "kraus", tuple(ops))


def make_channel(kraus: Sequence, n: int) -> QuantumChannel:
    return QuantumChannel(tuple(kraus), n)


def apply_channel(ch: QuantumChannel, rho: DensityMatrix) -> DensityMatrix:
    if ch.n != rho.n:
        raise DimensionMismatch(f"channel acts on {ch.n} qubits, state has {rho.n}")
    ks = np.stack(ch.kraus)
    out = np.einsum("kab,bc,kdc->ad", ks, rho.data, ks.conj())
    return DensityMatrix((out + out.conj().T) / 2, rho.n)


def compose(first: QuantumChannel, second: QuantumChannel) -> QuantumChannel:
    """Channel that applies ``first`` then ``second``."""
    if first.n != second.n:
        raise DimensionMismatch(f"cannot compose channels on {first.n} and {second.n} qubits")
    return QuantumChannel(tuple(b @ a for b in second.kraus for a in first.kraus), first.n)


def _local_tensor_kraus(local: Sequence[np.ndarray], n: int) -> list:
    return [reduce(np.kron, ops) for ops in itertools.product(local, repeat=n)]


def _probability(params, name):
    if len(params) != 1:
        raise BadParams(f"{name} takes exactly one parameter p, got {list(params)}")
    p = float(params[0])
    if not 0.0 <= p <= 1.0:
        raise BadParams(f"{name} parameter p={p} outside [0, 1]")
    return p


def identity_channel(n: int) -> QuantumChannel:
    return QuantumChannel((np.eye(2**n, dtype=complex),), n)


def dephasing(p: float, n: int) -> QuantumChannel:
    """Independent Z-dephasing on every qubit; off-diagonals of each qubit shrink by ``1 - p``."""
    local = [np.sqrt(1 - p / 2) * _PAULIS[0], np.sqrt(p / 2) * _PAULIS[3]]
    return QuantumChannel(tuple(_local_tensor_kraus(local, n)), n)


def depolarizing(p: float, n: int) -> QuantumChannel:
    """Global depolarizing ``(1 - p) rho + p I / d`` built from n-qubit Pauli strings."""
    d = 2**n
    strings = _local_tensor_kraus(_PAULIS, n)
    ops = [np.sqrt(1 - p + p / d**2) * strings[0]]
    ops += [np.sqrt(p / d**2) * s for s in strings[1:]] if p > 0 else []
    return QuantumChannel(tuple(ops), n)


def replace_with(target, n: int | None = None) -> QuantumChannel:
    """Channel discarding its input and preparing ``target``.

    Kraus set ``sqrt(lam_a) |v_a><e_j|`` over the target's eigenpairs and the
    computational basis ``e_j``.
    """
    if isinstance(target, PureState):
        lams, vecs = np.array([1.0]), target.amplitudes[:, None]
    elif isinstance(target, DensityMatrix):
        lams, vecs = np.linalg.eigh(target.data)
    else:
        raise BadParams(f"replace_with needs a PureState or DensityMatrix, got {type(target).__name__}")
    if n is not None and n != target.n:
        raise DimensionMismatch(f"target has {target.n} qubits, channel requested on {n}")
    lams = np.clip(lams, 0.0, None)
    lams = lams / lams.sum()
    dim = 2**target.n
    ops = []
    for lam, v in zip(lams, vecs.T):
        if lam <= 1e-15:
            continue
        for j in range(dim):
            op = np.zeros((dim, dim), dtype=complex)
            op[:, j] = np.sqrt(lam) * v
            ops.append(op)
    return QuantumChannel(tuple(ops), target.n)


CHANNEL_NAMES = ("identity", "dephasing", "depolarizing", "replace_with")


def standard_channel(name: str, params: Sequence[float] = (), n: int = 1, target=None) -> QuantumChannel:
    """Named channel on ``n`` qubits; ``replace_with`` reads its state from ``target``."""
    params = list(params)
    if name == "identity":
        if params:
            raise BadParams(f"identity takes no parameters, got {params}")
        return identity_channel(n)
    if name == "dephasing":
        return dephasing(_probability(params, name), n)
    if name == "depolarizing":
        return depolarizing(_probability(params, name), n)
    if name == "replace_with":
        if target is None:
            raise BadParams("replace_with needs a target state")
        return replace_with(target, n)
    raise UnknownChannel(f"unknown channel {name!r}; expected one of {list(CHANNEL_NAMES)}")
