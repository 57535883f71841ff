import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from discordium.errors import IndexOutOfRange, NotPositive
from discordium.linalg import random_density, validate_density
from discordium.sun import (
    GELL_MANN_ORDER,
    FanoCoefficients,
    dephasing_residuals,
    diagonal_mask,
    fano_compose,
    fano_decompose,
    fano_matrix,
    gell_mann,
    generators,
    pauli,
    pinch_computational,
    projector,
)

S3 = np.sqrt(3.0)
# written out by hand, independent of the generator construction
GELL_MANN = [
    np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
    np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
    np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
    np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
    np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]),
    np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
    np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
    np.array([[1, 0, 0], [0, 1, 0], [0, 0, -2]]) / S3,
]


class TestProjector:
    def test_one_based(self):
        p = projector(1, 3, 3)
        assert p[0, 2] == 1 and np.count_nonzero(p) == 1

    @pytest.mark.parametrize("jk", [(0, 1), (1, 4), (4, 4)])
    def test_out_of_range(self, jk):
        with pytest.raises(IndexOutOfRange):
            projector(*jk, 3)


class TestGenerators:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_algebra(self, n):
        g = generators(n).stack()
        assert g.shape == (n * n - 1, n, n)
        assert_allclose(g, np.conj(np.swapaxes(g, 1, 2)), atol=0)
        assert_allclose(np.einsum("iaa->i", g), 0, atol=1e-14)
        assert_allclose(np.einsum("iab,jba->ij", g, g), 2 * np.eye(n * n - 1), atol=1e-14)

    def test_pauli(self):
        sx, sy, sz = pauli()
        assert_allclose(sx, [[0, 1], [1, 0]])
        assert_allclose(sy, [[0, -1j], [1j, 0]])
        assert_allclose(sz, [[1, 0], [0, -1]])

    def test_gell_mann(self):
        for got, want in zip(gell_mann(), GELL_MANN):
            assert_allclose(got, want, atol=1e-15)

    def test_label_order(self):
        g = generators(3)
        assert g.labels == ("U12", "U13", "U23", "V12", "V13", "V23", "W1", "W2")
        assert [g.labels[i] for i in GELL_MANN_ORDER] == ["U12", "V12", "W1", "U13", "V13", "U23", "V23", "W2"]
        assert g.index("W2") == 7

    def test_generators_are_immutable(self):
        with pytest.raises(ValueError):
            generators(2)[0][0, 0] = 5

    def test_rejects_n_below_two(self):
        with pytest.raises(IndexOutOfRange):
            generators(1)

    def test_diagonal_mask(self):
        assert diagonal_mask(3).tolist() == [False] * 6 + [True] * 2

    def test_completeness(self):
        # any traceless Hermitian matrix expands in the generators
        rng = np.random.default_rng(1)
        h = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = h + h.conj().T
        h -= np.trace(h) / 4 * np.eye(4)
        g = generators(4).stack()
        c = np.real(np.einsum("ab,iba->i", h, g)) / 2
        assert_allclose(np.einsum("i,iab->ab", c, g), h, atol=1e-13)


class TestDephasingIdentities:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_residuals_vanish(self, n):
        r = dephasing_residuals(n)
        assert max(r.values()) <= 1e-15

    def test_pinch_keeps_diagonal(self):
        m = np.arange(9).reshape(3, 3).astype(complex)
        assert_allclose(pinch_computational(m), np.diag([0, 4, 8]))


class TestFano:
    def test_maximally_mixed_is_zero(self):
        c = fano_decompose(fano_compose(FanoCoefficients.zeros(2, 3)))
        assert not any(c.named(nonzero_only=True))

    def test_bell_state(self):
        phi = np.zeros(4)
        phi[[0, 3]] = 1 / np.sqrt(2)
        c = fano_decompose(validate_density(np.outer(phi, phi), 2, 2))
        assert_allclose(np.diag(c.gamma), [1, -1, 1], atol=1e-15)
        assert_allclose(c.alpha, 0, atol=1e-15)

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_round_trip(self, rng, dims):
        rho = random_density(*dims, rng)
        back = fano_compose(fano_decompose(rho))
        assert_allclose(back.matrix, rho.matrix, atol=1e-14)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_round_trip_property(self, seed):
        rho = random_density(2, 3, np.random.default_rng(seed))
        c = fano_decompose(rho)
        assert_allclose(fano_matrix(c), rho.matrix, atol=1e-14)

    def test_named_keys(self):
        c = FanoCoefficients.from_named(2, 3, {"alpha.3": 0.1, "beta.8": -0.2, "gamma.1.4": 0.05})
        assert c.alpha[2] == 0.1 and c.beta[7] == -0.2 and c.gamma[0, 3] == 0.05
        assert c.named(nonzero_only=True) == {"alpha.3": 0.1, "beta.8": -0.2, "gamma.1.4": 0.05}
        assert len(c.named()) == 3 + 8 + 24

    @pytest.mark.parametrize("key", ["alpha.4", "beta.0", "gamma.1", "delta.1", "alpha.x"])
    def test_bad_key(self, key):
        with pytest.raises(IndexOutOfRange):
            FanoCoefficients.from_named(2, 2, {key: 0.1})

    def test_non_psd_rejected(self):
        with pytest.raises(NotPositive):
            fano_compose(FanoCoefficients.from_named(2, 2, {"alpha.3": 1.5}))
