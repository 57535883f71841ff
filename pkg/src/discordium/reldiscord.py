"""Relative entropy of discord via product-basis pinchings.

``D_rel = S(chi) - S(rho)`` where ``chi`` dephases both subsystems in local
bases. ``mode='fixed'`` uses computational bases, ``mode='min'`` minimizes
over both local bases with the same grid-and-simplex search as discord.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .discord import basis_layout, quantum_discord
from .errors import UnsupportedDimension
from .linalg import DensityMatrix, partial_trace, von_neumann_entropy
from .measurement import (
    BasisParams,
    ProjectiveBasis,
    computational_basis,
    dephase,
    givens_unitaries,
    n_pairs,
    pinched_entropies,
)
from .optimizer import OptimizerConfig, grid_then_refine
from .sun import diagonal_mask, fano_decompose

FIXED = "fixed"
MINIMIZED = "min"
IDENTICAL_TOL = 1e-10


def closest_classical(
    rho: DensityMatrix,
    basis_a: ProjectiveBasis | None = None,
    basis_b: ProjectiveBasis | None = None,
) -> DensityMatrix:
    """Pinching ``sum (Pi_k x Pi_l) rho (Pi_k x Pi_l)``; computational bases by default."""
    basis_a = basis_a or computational_basis(rho.dim_a)
    basis_b = basis_b or computational_basis(rho.dim_b)
    return dephase(rho, basis_a, basis_b, "both")


@dataclass(frozen=True)
class PinchingOptimum:
    entropy: float
    params_a: BasisParams
    params_b: BasisParams
    evals: int


def minimize_pinched_entropy(rho: DensityMatrix, cfg: OptimizerConfig | None = None) -> PinchingOptimum:
    """Smallest ``S(chi)`` over pairs of local projective bases."""
    cfg = cfg or OptimizerConfig()
    da, db = rho.dims
    ka = 2 * n_pairs(da)

    def objective(x: np.ndarray) -> np.ndarray:
        return pinched_entropies(rho, givens_unitaries(da, x[:, :ka]), givens_unitaries(db, x[:, ka:]))

    res = grid_then_refine(objective, basis_layout(da) + basis_layout(db), cfg)
    pa = BasisParams.from_vector(da, res.x[:ka]).canonical()
    pb = BasisParams.from_vector(db, res.x[ka:]).canonical()
    return PinchingOptimum(res.value, pa, pb, res.evals)


def relative_discord(rho: DensityMatrix, mode: str = MINIMIZED, cfg: OptimizerConfig | None = None) -> float:
    """Relative entropy of discord in bits.

    ``mode='fixed'`` pinches in the computational product basis;
    ``mode='min'`` minimizes over all local product bases.
    """
    mode = mode.lower()
    s_rho = von_neumann_entropy(rho)
    if mode == FIXED:
        s_chi = von_neumann_entropy(closest_classical(rho))
    elif mode == MINIMIZED:
        s_chi = minimize_pinched_entropy(rho, cfg).entropy
    else:
        raise ValueError(f"mode must be 'fixed' or 'min', got {mode!r}")
    return max(0.0, s_chi - s_rho)


def required_vanishing(dim_a: int, dim_b: int) -> list[str]:
    """Fano coefficients that must vanish for the three dephasings to coincide.

    Computational dephasing keeps only diagonal generators. ``rho^A = chi``
    forces ``beta_j = 0`` and ``gamma_ij = 0`` for diagonal ``i``, non-diagonal
    ``j``; ``rho^B = chi`` gives the mirrored conditions.
    """
    wa, wb = diagonal_mask(dim_a), diagonal_mask(dim_b)
    names = [f"alpha.{i + 1}" for i in np.flatnonzero(~wa)]
    names += [f"beta.{j + 1}" for j in np.flatnonzero(~wb)]
    for i in range(len(wa)):
        for j in range(len(wb)):
            if wa[i] != wb[j]:
                names.append(f"gamma.{i + 1}.{j + 1}")
    return names


@dataclass(frozen=True)
class ClassicalityReport:
    is_paper_classical_form: bool
    max_deviation: float
    violated_coefficients: list[str] = field(default_factory=list)
    equality_gap: float = 0.0
    relative_discord_fixed: float = 0.0
    discord: float = 0.0


def classicality_conditions(
    rho: DensityMatrix, cfg: OptimizerConfig | None = None, tol: float = IDENTICAL_TOL
) -> ClassicalityReport:
    """Check whether computational dephasing on A, on B and on both agree.

    Also names the Fano coefficients that should vanish but do not (above
    ``tol``) and reports ``|S(chi) - S(rho_B) - min_Pi S(A|B)|``.

    Raises
    ------
    UnsupportedDimension
        Unless the state is qubit-qubit or qubit-qutrit.
    """
    if rho.dim_a != 2 or rho.dim_b not in (2, 3):
        raise UnsupportedDimension(f"classicality check supports dims (2,2) and (2,3), got {rho.dims}")
    ca, cb = computational_basis(rho.dim_a), computational_basis(rho.dim_b)
    chi = dephase(rho, ca, cb, "both").matrix
    rho_a = dephase(rho, ca, None, "A").matrix
    rho_b = dephase(rho, None, cb, "B").matrix
    dev = max(
        float(np.max(np.abs(chi - rho_a))),
        float(np.max(np.abs(chi - rho_b))),
        float(np.max(np.abs(rho_a - rho_b))),
    )
    coeffs = fano_decompose(rho).named()
    violated = [name for name in required_vanishing(*rho.dims) if abs(coeffs[name]) > tol]

    report = quantum_discord(rho, "B", cfg)
    s_chi = von_neumann_entropy(DensityMatrix(chi, *rho.dims))
    s_b = von_neumann_entropy(partial_trace(rho, "B"))
    gap = abs(s_chi - (s_b + report.conditional_entropy))
    return ClassicalityReport(
        is_paper_classical_form=dev <= tol and not violated,
        max_deviation=dev,
        violated_coefficients=violated,
        equality_gap=gap,
        relative_discord_fixed=max(0.0, s_chi - von_neumann_entropy(rho)),
        discord=report.discord,
    )
