"""Rank-1 projective measurements on one side of a bipartite state.

A measurement basis is parameterized by an ordered product of two-level
rotations with phases (one angle and one phase per index pair), which
covers every orthonormal basis up to relabeling and vector phases.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, MissingBasis, ValidationError
from .linalg import (
    ZERO_EIG,
    DensityMatrix,
    Side,
    normalize_side,
    von_neumann_entropy,
)

ORTHO_TOL = 1e-12
ZERO_PROB = 1e-14


def n_pairs(dim: int) -> int:
    return dim * (dim - 1) // 2


@dataclass(frozen=True, eq=False)
class ProjectiveBasis:
    """Orthonormal basis; ``vectors[:, k]`` is the k-th measurement vector."""

    dim: int
    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        if v.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"basis of shape {v.shape} for dim {self.dim}")
        err = np.max(np.abs(v.conj().T @ v - np.eye(self.dim)))
        if err > ORTHO_TOL:
            raise ValidationError(f"basis vectors not orthonormal (error {err:.2e})")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    def projectors(self) -> np.ndarray:
        """Array ``(dim, dim, dim)`` of the rank-1 projectors ``|k><k|``."""
        v = self.vectors
        return np.einsum("ik,jk->kij", v, v.conj())


def computational_basis(dim: int) -> ProjectiveBasis:
    return ProjectiveBasis(dim, np.eye(dim))


@dataclass(frozen=True, eq=False)
class BasisParams:
    """Rotation angles and phases, one of each per index pair ``(i, j)``, ``i < j``."""

    dim: int
    angles: np.ndarray
    phases: np.ndarray

    def __post_init__(self):
        m = n_pairs(self.dim)
        a = np.array(self.angles, dtype=float).reshape(-1)
        p = np.array(self.phases, dtype=float).reshape(-1)
        if a.size != m or p.size != m:
            raise DimensionMismatch(f"dim {self.dim} needs {m} angles and {m} phases")
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "phases", p)

    @classmethod
    def zeros(cls, dim: int) -> "BasisParams":
        return cls(dim, np.zeros(n_pairs(dim)), np.zeros(n_pairs(dim)))

    @classmethod
    def from_vector(cls, dim: int, x) -> "BasisParams":
        x = np.asarray(x, dtype=float)
        m = n_pairs(dim)
        return cls(dim, x[:m], x[m:])

    def vector(self) -> np.ndarray:
        return np.concatenate([self.angles, self.phases])

    def canonical(self) -> "BasisParams":
        """Same parameters with phases wrapped into ``[0, 2 pi)``."""
        return BasisParams(self.dim, self.angles, np.mod(self.phases, 2 * np.pi))


def givens_unitaries(dim: int, params) -> np.ndarray:
    """Unitaries for a batch of flattened parameter vectors.

    ``params`` has shape ``(n, 2 * n_pairs(dim))`` (angles then phases). The
    result ``U`` has shape ``(n, dim, dim)`` and equals the ordered product
    ``G(0,1) G(0,2) ... G(dim-2,dim-1)``, where ``G(i,j)`` maps column ``i``
    to ``cos t e_i + e^{i phi} sin t e_j``.
    """
    x = np.atleast_2d(np.asarray(params, dtype=float))
    m = n_pairs(dim)
    if x.shape[1] != 2 * m:
        raise DimensionMismatch(f"expected {2 * m} parameters for dim {dim}")
    n = x.shape[0]
    u = np.broadcast_to(np.eye(dim, dtype=complex), (n, dim, dim)).copy()
    for k, (i, j) in enumerate(combinations(range(dim), 2)):
        c = np.cos(x[:, k])[:, None]
        s = np.sin(x[:, k])[:, None]
        e = np.exp(1j * x[:, m + k])[:, None]
        ci, cj = u[:, :, i].copy(), u[:, :, j]
        u[:, :, i] = c * ci + e * s * cj
        u[:, :, j] = -np.conj(e) * s * ci + c * cj
    return u


def basis_from_params(p: BasisParams) -> ProjectiveBasis:
    return ProjectiveBasis(p.dim, givens_unitaries(p.dim, p.vector()[None, :])[0])


@dataclass(frozen=True)
class MeasurementEnsemble:
    """Outcome probabilities with the conditional states of the unmeasured side.

    Outcomes with probability below ``1e-14`` carry ``None`` as their state.
    """

    outcomes: tuple[tuple[float, DensityMatrix | None], ...]
    measured_side: Side
    basis: ProjectiveBasis

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.outcomes])

    @property
    def states(self) -> list[DensityMatrix | None]:
        return [s for _, s in self.outcomes]

    def average_state(self) -> np.ndarray:
        """``sum_i P_i rho_{X|i}``; equals the reduced state of the unmeasured side."""
        states = [(p, s) for p, s in self.outcomes if s is not None]
        return sum(p * s.matrix for p, s in states)


def _check_side_dim(rho: DensityMatrix, basis: ProjectiveBasis, side: Side) -> None:
    want = rho.dim_a if side == "A" else rho.dim_b
    if basis.dim != want:
        raise DimensionMismatch(f"basis dim {basis.dim} does not match subsystem {side} dim {want}")


def measure_subsystem(rho: DensityMatrix, basis: ProjectiveBasis, side: str) -> MeasurementEnsemble:
    """Measure one subsystem in ``basis`` and condition the other on the outcome."""
    side = normalize_side(side)
    _check_side_dim(rho, basis, side)
    t = rho.tensor4()
    v = basis.vectors
    if side == "B":
        blocks = np.einsum("bk,abcd,dk->kac", v.conj(), t, v)
        other = rho.dim_a
    else:
        blocks = np.einsum("ak,abcd,ck->kbd", v.conj(), t, v)
        other = rho.dim_b
    outcomes = []
    for m in blocks:
        p = float(np.real(np.trace(m)))
        if p < ZERO_PROB:
            outcomes.append((max(p, 0.0), None))
        else:
            m = m / p
            outcomes.append((p, DensityMatrix(0.5 * (m + m.conj().T), other)))
    return MeasurementEnsemble(tuple(outcomes), side, basis)


def conditional_entropy(e: MeasurementEnsemble) -> float:
    """``sum_i P_i S(rho_{X|i})`` in bits, skipping null outcomes."""
    return float(sum(p * von_neumann_entropy(s) for p, s in e.outcomes if s is not None))


def _dephase_side(m: np.ndarray, dims: tuple[int, int], basis: ProjectiveBasis, side: Side) -> np.ndarray:
    da, db = dims
    projs = basis.projectors()
    out = np.zeros_like(m)
    for p in projs:
        op = np.kron(p, np.eye(db)) if side == "A" else np.kron(np.eye(da), p)
        out += op @ m @ op
    return out


def dephase(
    rho: DensityMatrix,
    basis_a: ProjectiveBasis | None = None,
    basis_b: ProjectiveBasis | None = None,
    mode: str = "both",
) -> DensityMatrix:
    """Apply ``rho -> sum_k Pi_k rho Pi_k`` on side A, side B, or both.

    Raises
    ------
    MissingBasis
        If the basis of a side that ``mode`` dephases is not given.
    """
    mode = mode.lower()
    if mode not in ("a", "b", "both"):
        raise ValueError(f"mode must be 'A', 'B' or 'both', got {mode!r}")
    m = rho.matrix
    for side, basis in (("A", basis_a), ("B", basis_b)):
        if mode in (side.lower(), "both"):
            if basis is None:
                raise MissingBasis(f"mode {mode!r} requires a basis for side {side}")
            _check_side_dim(rho, basis, side)  # type: ignore[arg-type]
            m = _dephase_side(m, rho.dims, basis, side)  # type: ignore[arg-type]
    return DensityMatrix(m, rho.dim_a, rho.dim_b)


# Batched kernels used by the optimizers. Each takes a stack of unitaries
# whose columns are measurement vectors.


def _batch_entropy_unnormalized(blocks: np.ndarray) -> np.ndarray:
    """``-sum mu log2 mu`` over eigenvalues of each Hermitian block (last two axes)."""
    mu = np.linalg.eigvalsh(blocks)
    pos = mu > ZERO_EIG
    safe = np.where(pos, mu, 1.0)
    return -np.sum(np.where(pos, mu * np.log2(safe), 0.0), axis=-1)


def conditional_blocks(rho: DensityMatrix, unitaries: np.ndarray, side: Side) -> np.ndarray:
    """Unnormalized conditional states ``Tr_X[(Pi_k) rho]``, shape ``(n, k, d, d)``."""
    t = rho.tensor4()
    u = unitaries
    if side == "B":
        left = np.einsum("nbk,abcd->nkacd", u.conj(), t)
        return np.einsum("nkacd,ndk->nkac", left, u)
    left = np.einsum("nak,abcd->nkbcd", u.conj(), t)
    return np.einsum("nkbcd,nck->nkbd", left, u)


def conditional_entropies(rho: DensityMatrix, unitaries: np.ndarray, side: Side) -> np.ndarray:
    """Measured conditional entropy for each unitary in the batch.

    Uses ``P S(M/P) = H(mu) + P log2 P`` with ``mu`` the eigenvalues of the
    unnormalized block ``M``, so zero-probability outcomes need no division.
    """
    blocks = conditional_blocks(rho, unitaries, side)
    blocks = 0.5 * (blocks + np.conj(np.swapaxes(blocks, -1, -2)))
    probs = np.real(np.einsum("nkii->nk", blocks))
    h = _batch_entropy_unnormalized(blocks)
    safe = np.where(probs > ZERO_EIG, probs, 1.0)
    plogp = np.where(probs > ZERO_EIG, probs * np.log2(safe), 0.0)
    return np.clip(np.sum(h + plogp, axis=1), 0.0, None)


def pinched_probabilities(rho: DensityMatrix, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Joint outcome distribution ``<u_k v_l| rho |u_k v_l>``, shape ``(n, dA, dB)``."""
    blocks = conditional_blocks(rho, ub, "B")  # (n, l, a, c)
    left = np.einsum("nak,nlac->nklc", ua.conj(), blocks)
    return np.real(np.einsum("nklc,nck->nkl", left, ua))


def pinched_entropies(rho: DensityMatrix, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Entropy of the product-basis pinching for each pair of unitaries."""
    p = pinched_probabilities(rho, ua, ub).reshape(ua.shape[0], -1)
    safe = np.where(p > ZERO_EIG, p, 1.0)
    return np.clip(-np.sum(np.where(p > ZERO_EIG, p * np.log2(safe), 0.0), axis=1), 0.0, None)
