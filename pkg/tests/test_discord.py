import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from discordium.discord import (
    basis_layout,
    brute_force_oracle,
    classical_correlation,
    minimize_conditional_entropy,
    mutual_information,
    quantum_discord,
)
from discordium.errors import UnsupportedDimension
from discordium.linalg import (
    partial_trace,
    product_state,
    pure_state,
    random_density,
    random_unitary,
    validate_density,
    von_neumann_entropy,
)
from discordium.measurement import ProjectiveBasis, basis_from_params, conditional_entropy, measure_subsystem
from discordium.optimizer import OptimizerConfig, grid_chunks, grid_then_refine, thread_count
from discordium.xstate import example_state
from oracles import bell_diagonal, bell_diagonal_discord, werner, werner_discord

# closed-form Werner discord, frozen from tests/oracles.py
WERNER = {0.2: 0.049022499567306366, 0.5: 0.26248318376373436, 0.8: 0.6214109137647076, 1.0: 1.0}


def _local_unitary(rho, ua, ub):
    u = np.kron(ua, ub)
    return validate_density(u @ rho.matrix @ u.conj().T, rho.dim_a, rho.dim_b)


class TestMutualInformation:
    def test_bell_state(self):
        phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        assert_allclose(mutual_information(pure_state(phi, 2, 2)), 2.0, atol=1e-12)

    def test_product_state(self, rng):
        rho = product_state(random_density(2, 1, rng), random_density(3, 1, rng))
        assert_allclose(mutual_information(rho), 0.0, atol=1e-12)


class TestQuantumDiscord:
    @pytest.mark.parametrize("p", sorted(WERNER))
    def test_werner(self, p):
        rep = quantum_discord(validate_density(werner(p), 2, 2))
        assert_allclose(rep.discord, WERNER[p], atol=1e-9)
        assert_allclose(werner_discord(p), WERNER[p], atol=1e-15)

    @pytest.mark.parametrize("c", [(0.3, -0.5, 0.2), (0.9, 0.1, -0.1), (-0.2, -0.2, 0.6)])
    def test_bell_diagonal(self, c):
        mi, j, d = bell_diagonal_discord(*c)
        rep = quantum_discord(validate_density(bell_diagonal(*c), 2, 2), "A")
        assert_allclose([rep.mutual_information, rep.classical_correlation, rep.discord], [mi, j, d], atol=1e-9)

    def test_pure_state_discord_is_entanglement_entropy(self, rng):
        psi = rng.normal(size=6) + 1j * rng.normal(size=6)
        rho = pure_state(psi, 2, 3)
        s_a = von_neumann_entropy(partial_trace(rho, "A"))
        for side in ("A", "B"):
            assert_allclose(quantum_discord(rho, side).discord, s_a, atol=1e-7)

    def test_product_state_zero(self, rng):
        rho = product_state(random_density(2, 1, rng), random_density(2, 1, rng))
        rep = quantum_discord(rho)
        assert rep.discord == pytest.approx(0.0, abs=1e-9)

    def test_classical_quantum_state_zero_right_discord(self, rng):
        # sum_k p_k rho_k (x) |k><k| in a rotated basis has zero right discord
        v = random_unitary(2, rng)
        m = sum(
            np.kron(random_density(2, 1, rng).matrix, np.outer(v[:, k], v[:, k].conj())) * w
            for k, w in enumerate((0.3, 0.7))
        )
        rep = quantum_discord(validate_density(m, 2, 2), "B")
        assert rep.discord == pytest.approx(0.0, abs=1e-8)

    def test_report_consistency(self, rng):
        rho = random_density(2, 2, rng)
        rep = quantum_discord(rho, "B")
        assert_allclose(rep.discord, rep.mutual_information - rep.classical_correlation, atol=1e-9)
        e = measure_subsystem(rho, ProjectiveBasis(2, _basis_vectors(rep)), "B")
        assert_allclose(conditional_entropy(e), rep.conditional_entropy, atol=1e-12)
        d = rep.as_dict()
        assert d["side"] == "B" and len(d["optimal_basis_params"]["angles"]) == 1

    def test_local_unitary_invariance(self, rng):
        rho = random_density(2, 2, rng)
        rotated = _local_unitary(rho, random_unitary(2, rng), random_unitary(2, rng))
        assert_allclose(quantum_discord(rotated).discord, quantum_discord(rho).discord, atol=1e-7)

    def test_left_right_asymmetry(self):
        # classical on B, not on A: |0><0| (x) |0><0| + |+><+| (x) |1><1|
        plus = np.array([1, 1]) / np.sqrt(2)
        m = 0.5 * (np.kron(np.diag([1, 0]), np.diag([1, 0])) + np.kron(np.outer(plus, plus), np.diag([0, 1])))
        rho = validate_density(m, 2, 2)
        assert quantum_discord(rho, "B").discord == pytest.approx(0.0, abs=1e-8)
        assert quantum_discord(rho, "A").discord > 1e-2

    def test_example_state_frozen(self):
        # frozen from brute_force_oracle(grid_density=8) and the closed form
        assert_allclose(quantum_discord(example_state(0.3), "B").discord, 0.010340304776023601, atol=1e-7)

    def test_rejects_bad_side(self):
        with pytest.raises(ValueError):
            quantum_discord(random_density(2, 2, 0), "C")

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_property_bounds(self, seed):
        rho = random_density(2, 2, np.random.default_rng(seed))
        rep = quantum_discord(rho, "B")
        s_a = von_neumann_entropy(partial_trace(rho, "A"))
        s_b = von_neumann_entropy(partial_trace(rho, "B"))
        assert rep.discord >= 0.0
        assert rep.classical_correlation <= min(s_a, s_b) + 1e-9
        assert rep.classical_correlation >= -1e-12


def _basis_vectors(rep):
    return basis_from_params(rep.optimal_basis_params).vectors


class TestClassicalCorrelation:
    def test_matches_report(self, rng):
        rho = random_density(2, 2, rng)
        j, _ = classical_correlation(rho, "A")
        assert_allclose(j, quantum_discord(rho, "A").classical_correlation, atol=1e-12)


class TestOracle:
    def test_monotone_in_density(self, rng):
        rho = random_density(2, 2, rng)
        vals = [brute_force_oracle(rho, "B", n) for n in (2, 4, 8, 16)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_upper_bounds_optimizer(self, rng):
        rho = random_density(2, 3, rng)
        cond, _, _ = minimize_conditional_entropy(rho, "A")
        assert brute_force_oracle(rho, "A", 24) >= cond - 1e-12
        assert_allclose(brute_force_oracle(rho, "A", 48), cond, atol=2e-3)

    def test_qutrit_side(self, rng):
        rho = random_density(2, 3, rng)
        cond, _, _ = minimize_conditional_entropy(rho, "B")
        assert_allclose(brute_force_oracle(rho, "B", 6), cond, atol=2e-2)
        assert brute_force_oracle(rho, "B", 6) >= cond - 1e-12

    def test_unsupported_dimension(self, rng):
        with pytest.raises(UnsupportedDimension):
            brute_force_oracle(random_density(4, 2, rng), "A", 4)


class TestOptimizer:
    def test_layout(self):
        assert basis_layout(3) == ["angle"] * 3 + ["phase"] * 3

    def test_grid_density_cap(self):
        cfg = OptimizerConfig()
        assert [cfg.grid_density(n) for n in (2, 4, 6, 8)] == [24, 22, 8, 4]
        assert cfg.n_restarts(2) == 8 and cfg.n_restarts(6) == 16

    def test_bad_config(self):
        with pytest.raises(ValueError):
            OptimizerConfig(restarts=0)
        with pytest.raises(ValueError):
            OptimizerConfig(refinement_tolerance=0.0)

    def test_grid_is_lexicographic(self):
        pts = np.concatenate(list(grid_chunks(["angle", "phase"], 3, chunk=4)))
        assert pts.shape == (9, 2)
        assert_allclose(pts[:3, 0], 0.0)
        assert_allclose(pts[:3, 1], [0, 2 * np.pi / 3, 4 * np.pi / 3])

    def test_quadratic_minimum(self):
        target = np.array([0.4, 1.0])

        def f(x):
            return np.sum((x - target) ** 2, axis=1)

        res = grid_then_refine(f, ["angle", "angle"], OptimizerConfig(coarse_grid_points_per_angle=6))
        assert_allclose(res.x, target, atol=1e-4)
        assert res.grid_density == 6

    def test_boundary_minimum(self):
        res = grid_then_refine(lambda x: -x[:, 0], ["angle"], OptimizerConfig(coarse_grid_points_per_angle=5))
        assert_allclose(res.x[0], np.pi / 2, atol=1e-9)

    def test_thread_count_env(self, monkeypatch):
        monkeypatch.setenv("DISCORDIUM_THREADS", "3")
        assert thread_count() == 3
        monkeypatch.setenv("DISCORDIUM_THREADS", "0")
        assert thread_count() >= 1

    def test_deterministic_across_threads(self, rng, monkeypatch):
        rho = random_density(2, 3, rng)
        out = []
        for n in ("1", "4"):
            monkeypatch.setenv("DISCORDIUM_THREADS", n)
            rep = quantum_discord(rho, "A")
            out.append((rep.discord, tuple(rep.optimal_basis_params.vector())))
        assert out[0] == out[1]
