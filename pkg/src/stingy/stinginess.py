"""Stinginess measures, free-state membership and the free-operation falsifier.

The quantum measure of an ``n``-qubit state after losing ``m`` qubits is::

    S_Q(m, rho) = (m / n + d*) / 2,   d* = min over lost subsets and basis
                                         elements of D(tr_m rho, tr_m |psi_i><psi_i|)

and is infinite when ``m == n``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .channels import QuantumChannel, apply_channel
from .errors import (
    BadLossCount,
    BasisMismatch,
    ChannelMismatch,
    NoFreeSamplesFound,
    RegisterTooLarge,
    ValidationError,
)
from .metrics import DistanceMeasure, get_distance
from .qregister import (
    DensityMatrix,
    ProductBasis,
    QubitSubset,
    basis_state,
    index_bits,
    kept_basis_vectors,
    partial_trace,
    pure_to_density,
)
from .random_states import ginibre_density

# Minimizers within this gap of the true minimum count as tied for the witness.
TIE_TOL = 1e-12
BRUTEFORCE_MAX_QUBITS = 6


@dataclass(frozen=True)
class StinginessValue:
    """Finite measure value, or the infinite value reserved for ``m == n``.

    ``value`` is ``None`` exactly for the infinite variant.
    """

    value: float | None = None

    @classmethod
    def finite(cls, value: float) -> "StinginessValue":
        if not math.isfinite(value):
            raise ValueError(f"finite stinginess needs a finite number, got {value}")
        return cls(float(value))

    @classmethod
    def infinite(cls) -> "StinginessValue":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def exceeds(self, threshold: float) -> bool:
        return self.is_infinite or self.value > threshold

    def to_json(self):
        return "inf" if self.is_infinite else self.value

    def __str__(self):
        return "inf" if self.is_infinite else repr(self.value)


INFINITE = StinginessValue.infinite()


@dataclass(frozen=True)
class ClassicalComb:
    n: int
    broken: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"a comb needs a positive tooth count, got {self.n!r}")
        if isinstance(self.broken, bool) or not isinstance(self.broken, int):
            raise ValidationError(f"broken-teeth count must be an integer, got {self.broken!r}")
        if not 0 <= self.broken <= self.n:
            raise ValidationError(f"broken-teeth count {self.broken} outside [0, {self.n}]")


def s_classical(comb: ClassicalComb) -> Fraction:
    """Fraction of teeth broken before the comb is replaced."""
    return Fraction(comb.broken, comb.n)


@dataclass(frozen=True)
class MeasureWitness:
    """Measure value plus the loss scenario and reduced basis element achieving it.

    For ``m == n`` the subset holds every qubit, ``kept_bits`` is empty and
    ``min_distance`` is ``None``.
    """

    value: StinginessValue
    minimizing_subset: QubitSubset
    minimizing_kept_bits: tuple
    min_distance: float | None = None

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "min_distance": self.min_distance,
            "lost": list(self.minimizing_subset.lost),
            "kept": list(self.minimizing_subset.kept),
            "kept_bits": list(self.minimizing_kept_bits),
        }


def _check_inputs(rho: DensityMatrix, m, basis: ProductBasis | None):
    if basis is None:
        basis = ProductBasis.computational(rho.n)
    if basis.n != rho.n:
        raise BasisMismatch(f"basis is for {basis.n} qubits, state has {rho.n}")
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or not 0 <= m <= rho.n:
        raise BadLossCount(f"lost-qubit count must be an integer in [0, {rho.n}], got {m!r}")
    return int(m), basis


def _subset_distances(rho, basis, lost, dist) -> list:
    subset = QubitSubset(rho.n, lost)
    reduced = partial_trace(rho, subset)
    return [dist(reduced.data, np.outer(v, v.conj())) for v in kept_basis_vectors(basis, subset)]


def s_quantum(
    rho: DensityMatrix,
    m: int,
    basis: ProductBasis | None = None,
    distance: DistanceMeasure | str = "trace",
    threads: int = 1,
) -> MeasureWitness:
    """Quantum stinginess of ``rho`` when ``m`` qubits are lost.

    Only the kept-qubit bits of a basis index survive the partial trace, so
    each lost subset is compared against its ``2**(n - m)`` reduced basis
    states rather than all ``2**n`` basis elements. Subsets are scanned in
    lexicographic order and the witness is the first (subset, kept bits)
    pair within :data:`TIE_TOL` of the minimum. ``threads > 1`` spreads
    subsets over a thread pool with the same result.
    """
    m, basis = _check_inputs(rho, m, basis)
    n = rho.n
    if m == n:
        return MeasureWitness(INFINITE, QubitSubset(n, tuple(range(n))), ())
    dist = get_distance(distance)
    subsets = list(itertools.combinations(range(n), m))

    def scan(lost):
        return _subset_distances(rho, basis, lost, dist)

    if threads > 1 and len(subsets) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(scan, subsets))
    else:
        rows = [scan(lost) for lost in subsets]

    best = min(min(row) for row in rows)
    for lost, row in zip(subsets, rows):
        j = next((j for j, d in enumerate(row) if d <= best + TIE_TOL), None)
        if j is not None:
            break
    return MeasureWitness(
        StinginessValue.finite(0.5 * (m / n + best)),
        QubitSubset(n, lost),
        index_bits(j, n - m),
        best,
    )


def s_quantum_bruteforce(
    rho: DensityMatrix,
    m: int,
    basis: ProductBasis | None = None,
    distance: DistanceMeasure | str = "trace",
) -> StinginessValue:
    """Reference evaluation over every basis index and subset, tracing both states explicitly."""
    m, basis = _check_inputs(rho, m, basis)
    n = rho.n
    if n > BRUTEFORCE_MAX_QUBITS:
        raise RegisterTooLarge(f"brute force is capped at {BRUTEFORCE_MAX_QUBITS} qubits, got {n}")
    if m == n:
        return INFINITE
    dist = get_distance(distance)
    projectors = [pure_to_density(basis_state(basis, i)) for i in range(2**n)]
    best = math.inf
    for lost in itertools.combinations(range(n), m):
        reduced = partial_trace(rho, lost)
        for proj in projectors:
            best = min(best, dist(reduced, partial_trace(proj, lost)))
    return StinginessValue.finite(0.5 * (m / n + best))


@dataclass(frozen=True)
class FreeSetSpec:
    """Free set: states whose measure at loss count ``m`` is at most ``threshold``."""

    m: int
    threshold: float
    basis: ProductBasis
    distance: DistanceMeasure = field(default_factory=lambda: get_distance("trace"))

    def __post_init__(self):
        object.__setattr__(self, "distance", get_distance(self.distance))
        t = float(self.threshold)
        if not math.isfinite(t) or t < 0:
            raise ValidationError(f"threshold must be a finite number >= 0, got {self.threshold!r}")
        object.__setattr__(self, "threshold", t)
        m = self.m
        if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or not 0 <= m <= self.basis.n:
            raise BadLossCount(f"lost-qubit count must be an integer in [0, {self.basis.n}], got {m!r}")


@dataclass(frozen=True)
class Membership:
    free: bool
    witness: MeasureWitness

    def __bool__(self):
        return self.free


def is_free(rho: DensityMatrix, spec: FreeSetSpec, threads: int = 1) -> Membership:
    w = s_quantum(rho, spec.m, spec.basis, spec.distance, threads=threads)
    return Membership(not w.value.exceeds(spec.threshold), w)


def reset_decision(value: StinginessValue, threshold: float) -> bool:
    """Whether the register gets reset: only when the value is strictly above ``threshold``."""
    if not threshold >= 0:
        raise ValidationError(f"threshold must be >= 0, got {threshold!r}")
    return value.exceeds(threshold)


@dataclass(frozen=True)
class SamplerConfig:
    """Falsifier sampling plan.

    ``mix`` gives the fractions of basis states, Ginibre states and blends
    ``(1 - w) |psi_i><psi_i| + w * ginibre`` with ``w`` uniform in
    ``[0, blend_max]``.
    """

    max_samples: int = 500
    seed: int = 0
    mix: tuple = (0.2, 0.4, 0.4)
    blend_max: float = 0.5

    def __post_init__(self):
        if self.max_samples < 1:
            raise ValidationError(f"max_samples must be positive, got {self.max_samples}")
        if len(self.mix) != 3 or min(self.mix) < 0 or sum(self.mix) <= 0:
            raise ValidationError(f"mix must be three nonnegative weights, got {self.mix}")
        if not 0 <= self.blend_max <= 1:
            raise ValidationError(f"blend_max must lie in [0, 1], got {self.blend_max}")


@dataclass(frozen=True)
class ViolationFound:
    input_state: DensityMatrix
    output_state: DensityMatrix
    input_value: StinginessValue
    output_value: StinginessValue
    sample_index: int
    samples_tested: int


@dataclass(frozen=True)
class NoViolationFound:
    samples_tested: int
    samples_drawn: int


def draw_candidates(basis: ProductBasis, sampler: SamplerConfig):
    """Yield the falsifier's candidate input states in a seed-determined order."""
    rng = np.random.default_rng(sampler.seed)
    n = basis.n
    weights = np.asarray(sampler.mix, dtype=float)
    cumulative = np.cumsum(weights / weights.sum())
    for _ in range(sampler.max_samples):
        kind = int(np.searchsorted(cumulative, rng.random(), side="right"))
        if kind == 0:
            yield pure_to_density(basis_state(basis, int(rng.integers(2**n))))
        elif kind == 1:
            yield ginibre_density(n, rng)
        else:
            base = pure_to_density(basis_state(basis, int(rng.integers(2**n))))
            noise = ginibre_density(n, rng)
            w = rng.uniform(0.0, sampler.blend_max)
            yield DensityMatrix((1 - w) * base.data + w * noise.data, n)


def falsify_free_operation(
    channel: QuantumChannel,
    spec: FreeSetSpec,
    sampler: SamplerConfig | None = None,
    threads: int = 1,
):
    """Search for a free state that ``channel`` maps outside the free set.

    Returns :class:`ViolationFound` for the first counterexample, otherwise
    :class:`NoViolationFound` with the number of free inputs pushed through
    the channel. Raises :class:`NoFreeSamplesFound` when no drawn state was
    free. A clean run is evidence, not a proof of closure.
    """
    sampler = sampler or SamplerConfig()
    if channel.n != spec.basis.n:
        raise ChannelMismatch(f"channel acts on {channel.n} qubits, free set is for {spec.basis.n}")
    tested = 0
    for k, rho in enumerate(draw_candidates(spec.basis, sampler)):
        before = is_free(rho, spec, threads)
        if not before:
            continue
        tested += 1
        out = apply_channel(channel, rho)
        after = is_free(out, spec, threads)
        if not after:
            return ViolationFound(rho, out, before.witness.value, after.witness.value, k, tested)
    if tested == 0:
        raise NoFreeSamplesFound(sampler.max_samples)
    return NoViolationFound(tested, sampler.max_samples)
