import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from discordium.errors import (
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    SupportViolation,
    TraceNotOne,
)
from discordium.linalg import (
    DensityMatrix,
    eigh,
    maximally_mixed,
    partial_trace,
    product_state,
    pure_state,
    random_density,
    random_unitary,
    relative_entropy,
    shannon_entropy,
    tensor,
    validate_density,
    von_neumann_entropy,
)
from oracles import entropy_logm, partial_trace_loops

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestValidation:
    def test_accepts_valid_state(self, rng):
        m = random_density(2, 3, rng).matrix
        rho = validate_density(m, 2, 3)
        assert rho.dims == (2, 3)
        assert_allclose(rho.matrix, m, atol=1e-15)

    def test_rejects_non_hermitian(self):
        m = np.eye(4) / 4
        m[0, 1] = 0.1
        with pytest.raises(NotHermitian):
            validate_density(m, 2, 2)

    def test_rejects_wrong_trace(self):
        with pytest.raises(TraceNotOne):
            validate_density(np.eye(4) / 3, 2, 2)

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NotPositive):
            validate_density(np.diag([0.6, 0.5, -0.1, 0.0]), 2, 2)

    def test_rejects_bad_shape(self):
        with pytest.raises(DimensionMismatch):
            validate_density(np.eye(6) / 6, 2, 2)
        with pytest.raises(DimensionMismatch):
            validate_density(np.ones((2, 3)), 2, 1)

    def test_clamps_tiny_negative_eigenvalue(self):
        m = np.diag([0.5 + 1e-11, 0.5, -1e-11, 0.0])
        rho = validate_density(m, 2, 2)
        assert rho.eigenvalues.min() >= 0.0
        assert_allclose(np.trace(rho.matrix), 1.0, atol=1e-15)

    def test_matrix_is_read_only(self):
        rho = maximally_mixed(2, 2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0

    def test_constructor_checks_shape(self):
        with pytest.raises(DimensionMismatch):
            DensityMatrix(np.eye(4) / 4, 2, 3)


class TestTensorAndPartialTrace:
    def test_kron_ordering(self):
        a = np.diag([1.0, 0.0])
        b = np.diag([0.0, 0.0, 1.0])
        m = tensor(a, b)
        assert m[2, 2] == 1.0 and np.count_nonzero(m) == 1

    def test_product_state_traces(self, rng):
        ra, rb = random_density(2, 1, rng), random_density(3, 1, rng)
        rho = product_state(ra, rb)
        assert_allclose(partial_trace(rho, "A").matrix, ra.matrix, atol=1e-15)
        assert_allclose(partial_trace(rho, "B").matrix, rb.matrix, atol=1e-15)

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (3, 4)])
    def test_matches_loop_oracle(self, rng, dims):
        rho = random_density(*dims, rng)
        for keep in ("A", "B"):
            assert_allclose(partial_trace(rho, keep).matrix,
                            partial_trace_loops(rho.matrix, *dims, keep), atol=1e-15)

    def test_rejects_bad_side(self):
        with pytest.raises(ValueError):
            partial_trace(maximally_mixed(2, 2), "C")


class TestJacobi:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 9, 12])
    def test_random_hermitian(self, rng, n):
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = g + g.conj().T
        spec = eigh(h)
        assert_allclose(spec.eigenvalues, np.linalg.eigvalsh(h), atol=1e-12)
        assert_allclose(spec.reconstruct(), h, atol=1e-12)
        v = spec.eigenvectors
        assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)

    def test_ascending_order(self):
        spec = eigh(np.diag([3.0, -1.0, 2.0]))
        assert_allclose(spec.eigenvalues, [-1.0, 2.0, 3.0])

    def test_degenerate_spectrum(self, rng):
        u = random_unitary(6, rng)
        h = u @ np.diag([0.0, 0.0, 1.0, 1.0, 1.0, 2.0]) @ u.conj().T
        assert_allclose(eigh(h).eigenvalues, [0, 0, 1, 1, 1, 2], atol=1e-12)

    def test_pure_complex_offdiagonal(self):
        h = np.array([[0, -1j], [1j, 0]])
        assert_allclose(eigh(h).eigenvalues, [-1.0, 1.0], atol=1e-15)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            eigh(np.array([[0, 1], [0, 0]]))

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, n=st.integers(min_value=2, max_value=8))
    def test_property_reconstruction(self, seed, n):
        r = np.random.default_rng(seed)
        g = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
        h = (g + g.conj().T) * 10.0 ** r.uniform(-6, 3)
        spec = eigh(h)
        scale = max(np.linalg.norm(h), 1e-300)
        assert np.linalg.norm(spec.reconstruct() - h) <= 1e-12 * scale


class TestEntropy:
    def test_shannon(self):
        assert shannon_entropy([0.5, 0.5]) == 1.0
        assert shannon_entropy([1.0, 0.0]) == 0.0
        assert_allclose(shannon_entropy([0.25] * 4), 2.0)

    def test_pure_state_zero(self, rng):
        psi = rng.normal(size=6) + 1j * rng.normal(size=6)
        assert_allclose(von_neumann_entropy(pure_state(psi, 2, 3)), 0.0, atol=1e-12)

    def test_maximally_mixed(self):
        assert_allclose(von_neumann_entropy(maximally_mixed(2, 3)), np.log2(6), atol=1e-14)

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_matches_logm(self, rng, dims):
        rho = random_density(*dims, rng)
        assert_allclose(von_neumann_entropy(rho), entropy_logm(rho.matrix), atol=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_subadditivity_and_araki_lieb(self, seed):
        rho = random_density(2, 3, np.random.default_rng(seed))
        s = von_neumann_entropy(rho)
        sa = von_neumann_entropy(partial_trace(rho, "A"))
        sb = von_neumann_entropy(partial_trace(rho, "B"))
        assert s <= sa + sb + 1e-12
        assert s >= abs(sa - sb) - 1e-12


class TestRelativeEntropy:
    def test_self_is_zero(self, rng):
        rho = random_density(2, 2, rng)
        assert_allclose(relative_entropy(rho, rho), 0.0, atol=1e-12)

    def test_against_maximally_mixed(self, rng):
        rho = random_density(2, 2, rng)
        assert_allclose(relative_entropy(rho, maximally_mixed(2, 2)), 2.0 - von_neumann_entropy(rho), atol=1e-12)

    def test_commuting_is_classical_kl(self):
        p, q = np.array([0.7, 0.2, 0.1]), np.array([0.3, 0.3, 0.4])
        kl = float(np.sum(p * np.log2(p / q)))
        assert_allclose(relative_entropy(np.diag(p), np.diag(q)), kl, atol=1e-14)

    def test_support_violation(self):
        with pytest.raises(SupportViolation):
            relative_entropy(np.diag([0.5, 0.5]), np.diag([1.0, 0.0]))

    def test_contained_support_is_finite(self):
        assert_allclose(relative_entropy(np.diag([1.0, 0.0]), np.diag([0.5, 0.5])), 1.0, atol=1e-14)
