"""Mutual information, classical correlation and one-sided quantum discord.

Discord on side ``X`` is ``S(rho_X) - S(rho) + min_Pi sum_i P_i S(rho_{Y|i})``
where the minimum runs over rank-1 projective measurements of ``X``. The
minimum is found by a coarse grid over :class:`BasisParams` followed by
Nelder-Mead refinement; :func:`brute_force_oracle` is an independent
grid-only check of that search.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations

import numpy as np

from .errors import ConsistencyError, UnsupportedDimension
from .linalg import (
    ZERO_EIG,
    DensityMatrix,
    Side,
    normalize_side,
    partial_trace,
    von_neumann_entropy,
)
from .measurement import BasisParams, conditional_entropies, givens_unitaries, n_pairs
from .optimizer import ANGLE, PHASE, OptimizerConfig, axis_points, grid_then_refine

__all__ = [
    "CorrelationReport",
    "OptimizerConfig",
    "brute_force_oracle",
    "classical_correlation",
    "minimize_conditional_entropy",
    "mutual_information",
    "quantum_discord",
]

DISCORD_CLAMP = 1e-9


def basis_layout(dim: int) -> list[str]:
    m = n_pairs(dim)
    return [ANGLE] * m + [PHASE] * m


def mutual_information(rho: DensityMatrix) -> float:
    """``S(rho_A) + S(rho_B) - S(rho)`` in bits."""
    s_a = von_neumann_entropy(partial_trace(rho, "A"))
    s_b = von_neumann_entropy(partial_trace(rho, "B"))
    return max(0.0, s_a + s_b - von_neumann_entropy(rho))


def _measured_dim(rho: DensityMatrix, side: Side) -> int:
    return rho.dim_a if side == "A" else rho.dim_b


def minimize_conditional_entropy(
    rho: DensityMatrix, side: str, cfg: OptimizerConfig | None = None
) -> tuple[float, BasisParams, int]:
    """Minimum measured conditional entropy, its basis parameters and the evaluation count."""
    side = normalize_side(side)
    cfg = cfg or OptimizerConfig()
    dim = _measured_dim(rho, side)

    def objective(x: np.ndarray) -> np.ndarray:
        return conditional_entropies(rho, givens_unitaries(dim, x), side)

    res = grid_then_refine(objective, basis_layout(dim), cfg)
    return res.value, BasisParams.from_vector(dim, res.x).canonical(), res.evals


def classical_correlation(
    rho: DensityMatrix, side: str, cfg: OptimizerConfig | None = None
) -> tuple[float, BasisParams]:
    """Maximal classical correlation ``J`` with ``side`` measured, and the maximizing basis."""
    side = normalize_side(side)
    unmeasured = "B" if side == "A" else "A"
    cond, params, _ = minimize_conditional_entropy(rho, side, cfg)
    j = von_neumann_entropy(partial_trace(rho, unmeasured)) - cond
    return max(0.0, j), params


@dataclass(frozen=True)
class CorrelationReport:
    mutual_information: float
    classical_correlation: float
    discord: float
    side: Side
    optimal_basis_params: BasisParams
    optimizer_evals: int
    conditional_entropy: float

    def as_dict(self) -> dict:
        d = asdict(self)
        p = self.optimal_basis_params
        d["optimal_basis_params"] = {"dim": p.dim, "angles": p.angles.tolist(), "phases": p.phases.tolist()}
        return d


def quantum_discord(rho: DensityMatrix, side: str = "B", cfg: OptimizerConfig | None = None) -> CorrelationReport:
    """Quantum discord with projective measurements on ``side``.

    ``side='B'`` gives the right discord, ``side='A'`` the left discord.
    Negative values within ``1e-9`` of zero are clamped; anything more
    negative raises :class:`ConsistencyError`.
    """
    side = normalize_side(side)
    unmeasured = "B" if side == "A" else "A"
    s_ab = von_neumann_entropy(rho)
    s_meas = von_neumann_entropy(partial_trace(rho, side))
    s_unmeas = von_neumann_entropy(partial_trace(rho, unmeasured))
    cond, params, evals = minimize_conditional_entropy(rho, side, cfg)
    mi = s_meas + s_unmeas - s_ab
    j = s_unmeas - cond
    d = s_meas - s_ab + cond
    if abs(d - (mi - j)) > 1e-9:
        raise ConsistencyError("discord differs from I - J")
    if d < -DISCORD_CLAMP:
        raise ConsistencyError(f"negative discord {d:.3e}")
    return CorrelationReport(
        mutual_information=max(0.0, mi),
        classical_correlation=j,
        discord=max(0.0, d),
        side=side,
        optimal_basis_params=params,
        optimizer_evals=evals,
        conditional_entropy=cond,
    )


# Oracle: deliberately avoids the optimizer's kernels. Unitaries are built
# as explicit matrix products, conditional states by full-space projection
# followed by a partial trace.


def _explicit_unitaries(dim: int, x: np.ndarray) -> np.ndarray:
    m = n_pairs(dim)
    n = x.shape[0]
    u = np.broadcast_to(np.eye(dim, dtype=complex), (n, dim, dim)).copy()
    for k, (i, j) in enumerate(combinations(range(dim), 2)):
        g = np.broadcast_to(np.eye(dim, dtype=complex), (n, dim, dim)).copy()
        c, s, e = np.cos(x[:, k]), np.sin(x[:, k]), np.exp(1j * x[:, m + k])
        g[:, i, i] = c
        g[:, j, j] = c
        g[:, j, i] = e * s
        g[:, i, j] = -np.conj(e) * s
        u = u @ g
    return u


def _oracle_values(rho: DensityMatrix, side: Side, x: np.ndarray) -> np.ndarray:
    da, db = rho.dims
    dim = da if side == "A" else db
    u = _explicit_unitaries(dim, x)
    total = np.zeros(x.shape[0])
    for k in range(dim):
        vec = u[:, :, k]
        proj = np.einsum("ni,nj->nij", vec, vec.conj())
        if side == "B":
            full = np.einsum("ac,nbd->nabcd", np.eye(da), proj).reshape(-1, da * db, da * db)
        else:
            full = np.einsum("nac,bd->nabcd", proj, np.eye(db)).reshape(-1, da * db, da * db)
        projected = full @ rho.matrix @ full
        t = projected.reshape(-1, da, db, da, db)
        cond = np.einsum("nabcb->nac", t) if side == "B" else np.einsum("nabad->nbd", t)
        prob = np.real(np.trace(cond, axis1=1, axis2=2))
        ok = prob > ZERO_EIG
        lam = np.linalg.eigvalsh(cond[ok] / prob[ok, None, None])
        lam = np.clip(lam, 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            h = -np.sum(np.where(lam > ZERO_EIG, lam * np.log2(np.where(lam > 0, lam, 1.0)), 0.0), axis=1)
        total[ok] += prob[ok] * h
    return total


def brute_force_oracle(rho: DensityMatrix, side: str, grid_density: int) -> float:
    """Minimum conditional entropy over uniform parameter grids.

    The minimum is taken over the union of the uniform grids with
    ``1 .. grid_density`` points per axis, which makes the result monotone
    non-increasing in ``grid_density``.
    """
    side = normalize_side(side)
    dim = _measured_dim(rho, side)
    if dim not in (2, 3):
        raise UnsupportedDimension(f"oracle supports measured dimension 2 or 3, got {dim}")
    if grid_density < 1:
        raise ValueError("grid_density must be >= 1")
    layout = basis_layout(dim)
    best = np.inf
    for density in range(1, grid_density + 1):
        axes = [axis_points(kind, density) for kind in layout]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(layout))
        for start in range(0, mesh.shape[0], 8192):
            best = min(best, float(np.min(_oracle_values(rho, side, mesh[start : start + 8192]))))
    return best
