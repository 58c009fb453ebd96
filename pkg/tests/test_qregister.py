import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stingy.errors import (
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
)
from stingy.qregister import (
    DensityMatrix,
    ProductBasis,
    QubitSubset,
    basis_state,
    bell_state,
    kept_basis_vectors,
    make_density,
    make_pure,
    maximally_mixed,
    partial_trace,
    permute_qubits,
    pure_to_density,
    reduced_basis_state,
    tensor,
)
from stingy.random_states import ginibre_density, random_product_basis, random_pure

from .oracles import elementwise_outer, naive_partial_trace


def ket(*amps):
    return make_pure(np.array(amps, dtype=complex))


class TestMakeDensity:
    def test_maximally_mixed(self):
        rho = make_density(np.eye(2) / 2, 1)
        assert rho.n == 1
        np.testing.assert_array_equal(rho.data, np.eye(2) / 2)

    def test_bad_trace(self):
        with pytest.raises(BadTrace, match="0.9"):
            make_density(np.diag([0.9, 0.0]), 1)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian, match="0.4"):
            make_density(np.array([[0.5, 0.6], [0.2, 0.5]]), 1)

    def test_not_psd(self):
        with pytest.raises(NotPSD):
            make_density(np.diag([1.5, -0.5]), 1)

    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            make_density(np.eye(4) / 4, 1)
        with pytest.raises(DimensionMismatch):
            make_density(np.eye(3) / 3)

    def test_register_cap(self):
        with pytest.raises(RegisterTooLarge):
            DensityMatrix(np.eye(2), 13)

    def test_infers_n_and_is_read_only(self):
        src = np.eye(8) / 8
        rho = make_density(src)
        assert rho.n == 3
        src[0, 0] = 5
        assert rho.data[0, 0] == 1 / 8
        with pytest.raises(ValueError):
            rho.data[0, 0] = 1


class TestPureToDensity:
    def test_zero(self):
        np.testing.assert_array_equal(pure_to_density(ket(1, 0)).data, np.diag([1, 0]))

    def test_plus(self):
        s = 1 / np.sqrt(2)
        np.testing.assert_allclose(pure_to_density(ket(s, s)).data, np.full((2, 2), 0.5), atol=1e-15)

    def test_matches_elementwise_outer(self, rng):
        psi = random_pure(2, rng)
        np.testing.assert_allclose(
            pure_to_density(psi).data, elementwise_outer(psi.amplitudes), rtol=0, atol=1e-15
        )

    def test_unnormalized_rejected(self):
        with pytest.raises(NotNormalized):
            ket(1, 1)


class TestPartialTrace:
    def test_product_state(self):
        rho = pure_to_density(ket(0, 1, 0, 0))  # |01>
        np.testing.assert_allclose(partial_trace(rho, [1]).data, np.diag([1, 0]))

    def test_bell(self):
        rho = pure_to_density(bell_state())
        np.testing.assert_allclose(partial_trace(rho, QubitSubset(2, (0,))).data, np.eye(2) / 2)

    def test_ginibre_against_naive(self, ginibre):
        rho = ginibre(3)
        np.testing.assert_allclose(
            partial_trace(rho, [0, 2]).data, naive_partial_trace(rho.data, 3, [0, 2]), rtol=0, atol=1e-12
        )

    def test_kept_order_is_ascending(self):
        # |q0 q1 q2> = |1 0 1>; dropping q1 leaves |11> on (q0, q2)
        psi = np.zeros(8)
        psi[0b101] = 1
        out = partial_trace(pure_to_density(make_pure(psi)), [1])
        assert out.data[3, 3] == 1

    def test_errors(self, ginibre):
        rho = ginibre(2)
        with pytest.raises(SubsetMismatch):
            partial_trace(rho, QubitSubset(3, (0,)))
        with pytest.raises(FullTrace):
            partial_trace(rho, [0, 1])
        with pytest.raises(IndexOutOfRange):
            partial_trace(rho, [2])

    def test_empty_subset_is_identity(self, ginibre):
        rho = ginibre(2)
        np.testing.assert_array_equal(partial_trace(rho, []).data, rho.data)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_preserves_trace_and_psd(self, n, rng):
        for _ in range(334):
            rho = ginibre_density(n, rng)
            m = int(rng.integers(0, n))
            lost = sorted(rng.choice(n, size=m, replace=False).tolist())
            out = partial_trace(rho, lost)
            assert abs(np.trace(out.data) - 1) <= 1e-12
            assert np.linalg.eigvalsh(out.data)[0] >= -1e-9

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(3, 4), data=st.data())
    def test_sequential_consistency(self, seed, n, data):
        a, b = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        rho = ginibre_density(n, np.random.default_rng(seed))
        b_relabeled = b - 1 if b > a else b
        two_step = partial_trace(partial_trace(rho, [a]), [b_relabeled])
        one_step = partial_trace(rho, [a, b])
        np.testing.assert_allclose(two_step.data, one_step.data, rtol=0, atol=1e-12)

    def test_tensor_factor(self, ginibre):
        rho, sigma = ginibre(2), ginibre(1)
        out = partial_trace(tensor(rho, sigma), [2])
        np.testing.assert_allclose(out.data, rho.data, rtol=0, atol=1e-12)


class TestBasisState:
    def test_computational(self):
        psi = basis_state(ProductBasis.computational(2), 0)
        np.testing.assert_array_equal(psi.amplitudes, [1, 0, 0, 0])

    def test_hadamard(self):
        psi = basis_state(ProductBasis.hadamard(1), 1)
        np.testing.assert_allclose(psi.amplitudes, np.array([1, -1]) / np.sqrt(2))

    def test_most_significant_bit_is_qubit_zero(self):
        psi = basis_state(ProductBasis.computational(3), 0b100)
        assert psi.amplitudes[4] == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_gram_identity(self, n, rng):
        local = [random_product_basis(1, rng).local_bases[0], ProductBasis.hadamard(1).local_bases[0],
                 np.eye(2)]
        basis = ProductBasis(np.stack([local[k % 3] for k in range(n)]), n)
        vecs = np.array([basis_state(basis, i).amplitudes for i in range(2**n)])
        np.testing.assert_allclose(vecs.conj() @ vecs.T, np.eye(2**n), rtol=0, atol=1e-12)

    def test_index_range(self):
        with pytest.raises(IndexOutOfRange):
            basis_state(ProductBasis.computational(2), 4)

    def test_not_orthonormal(self):
        with pytest.raises(NotOrthonormal):
            ProductBasis(np.array([[[1, 0], [1, 0]]]), 1)


class TestReducedBasisState:
    def test_two_qubits(self):
        out = reduced_basis_state(ProductBasis.computational(2), [1], [0])
        np.testing.assert_array_equal(out.data, np.diag([1, 0]))

    def test_three_qubits(self):
        out = reduced_basis_state(ProductBasis.computational(3), [1], [1, 0])
        np.testing.assert_array_equal(out.data, np.diag([0, 0, 1, 0]))

    def test_int_bits(self):
        basis = ProductBasis.hadamard(3)
        a = reduced_basis_state(basis, [0], 2)
        b = reduced_basis_state(basis, [0], (1, 0))
        np.testing.assert_array_equal(a.data, b.data)

    def test_random_basis_lost_0_3(self, rng):
        basis = random_product_basis(4, rng)
        subset = QubitSubset(4, (0, 3))
        for i in range(16):
            bits = [(i >> (3 - k)) & 1 for k in range(4)]
            direct = reduced_basis_state(basis, subset, [bits[1], bits[2]])
            via_trace = partial_trace(pure_to_density(basis_state(basis, i)), subset)
            np.testing.assert_allclose(direct.data, via_trace.data, rtol=0, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_exhaustive_against_two_step(self, n, rng):
        basis = random_product_basis(n, rng)
        for m in range(n):
            for lost in itertools.combinations(range(n), m):
                subset = QubitSubset(n, lost)
                vecs = kept_basis_vectors(basis, subset)
                for i in range(2**n):
                    bits = [(i >> (n - 1 - k)) & 1 for k in range(n)]
                    kept_bits = [bits[q] for q in subset.kept]
                    direct = reduced_basis_state(basis, subset, kept_bits)
                    via_trace = partial_trace(pure_to_density(basis_state(basis, i)), subset)
                    np.testing.assert_allclose(direct.data, via_trace.data, rtol=0, atol=1e-12)
                    j = int("".join(map(str, kept_bits)), 2)
                    np.testing.assert_allclose(np.outer(vecs[j], vecs[j].conj()), direct.data, atol=1e-12)

    def test_wrong_bit_count(self):
        with pytest.raises(SubsetMismatch):
            reduced_basis_state(ProductBasis.computational(3), [1], [0])


def test_permute_qubits_moves_wires():
    psi = np.zeros(8)
    psi[0b100] = 1  # qubit 0 excited
    out = permute_qubits(pure_to_density(make_pure(psi)), [1, 2, 0])
    assert out.data[0b001, 0b001] == 1


def test_maximally_mixed():
    np.testing.assert_array_equal(maximally_mixed(2).data, np.eye(4) / 4)
