"""Dense complex linear algebra for small bipartite states.

Validation, Kronecker products, partial traces, a cyclic Jacobi
eigensolver for Hermitian matrices and base-2 entropy functionals.
Matrices are plain ``numpy`` complex arrays; validated states are wrapped
in :class:`DensityMatrix`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    SupportViolation,
    TraceNotOne,
    ValidationError,
)

TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-9
TOL_EIG = 1e-10
TOL_SUPP = 1e-9
# eigenvalues at or below this are exact zeros in entropy sums
ZERO_EIG = 1e-14

Side = Literal["A", "B"]


def normalize_side(side: str) -> Side:
    s = str(side).upper()
    if s not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return s  # type: ignore[return-value]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A density matrix on ``C^dim_a (x) C^dim_b``.

    Single-system states (reduced or conditional states) use ``dim_b == 1``.
    Construct through :func:`validate_density` unless validity is already
    guaranteed by construction; the constructor itself only freezes the data.
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int = 1

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"matrix shape {m.shape} does not match dims ({self.dim_a}, {self.dim_b})"
            )

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @cached_property
    def spectrum(self) -> Spectrum:
        return eigh(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    def tensor4(self) -> np.ndarray:
        """Matrix reshaped to ``(a, b, a', b')`` index order."""
        return self.matrix.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def as_matrix(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.matrix
    return np.asarray(m, dtype=complex)


def validate_density(
    m,
    dim_a: int,
    dim_b: int = 1,
    *,
    tol_herm: float = TOL_HERM,
    tol_trace: float = TOL_TRACE,
    tol_psd: float = TOL_PSD,
) -> DensityMatrix:
    """Check that ``m`` is a density matrix and wrap it.

    Eigenvalues in ``[-tol_psd, 0)`` are clamped to zero and the trace is
    renormalized; anything more negative raises :class:`NotPositive`.
    """
    a = np.array(as_matrix(m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if dim_a < 1 or dim_b < 1 or a.shape[0] != dim_a * dim_b:
        raise DimensionMismatch(
            f"matrix of size {a.shape[0]} incompatible with dims ({dim_a}, {dim_b})"
        )
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix contains non-finite entries")
    herm_err = np.max(np.abs(a - a.conj().T))
    if herm_err > tol_herm:
        raise NotHermitian(f"max |M - M^dag| = {herm_err:.3e} exceeds {tol_herm:g}")
    a = 0.5 * (a + a.conj().T)
    tr = float(np.real(np.trace(a)))
    if abs(tr - 1.0) > tol_trace:
        raise TraceNotOne(f"trace {tr!r} differs from 1 by more than {tol_trace:g}")
    spec = eigh(a)
    lam_min = spec.eigenvalues[0]
    if lam_min < -tol_psd:
        raise NotPositive(f"eigenvalue {lam_min:.3e} below -{tol_psd:g}")
    if lam_min < -ZERO_EIG:
        lam = np.clip(spec.eigenvalues, 0.0, None)
        lam = lam / lam.sum()
        spec = Spectrum(lam, spec.eigenvectors)
        a = spec.reconstruct()
        a = 0.5 * (a + a.conj().T)
    rho = DensityMatrix(a, dim_a, dim_b)
    rho.__dict__["spectrum"] = spec
    return rho


def tensor(a, b) -> np.ndarray:
    """Kronecker product; row index of the result is ``i_a * rows_b + i_b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def product_state(rho_a: DensityMatrix, rho_b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(tensor(rho_a, rho_b), rho_a.dim, rho_b.dim)


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Reduced state of subsystem ``keep`` (``'A'`` or ``'B'``)."""
    t = rho.tensor4()
    if normalize_side(keep) == "A":
        return DensityMatrix(np.einsum("abcb->ac", t), rho.dim_a)
    return DensityMatrix(np.einsum("abad->bd", t), rho.dim_b)


def _jacobi_rotation(a_pp: float, a_qq: float, a_pq: complex) -> np.ndarray:
    mag = abs(a_pq)
    phase = a_pq / mag
    tau = (a_qq - a_pp) / (2.0 * mag)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    ph = np.conj(phase)
    return np.array([[c, s], [-s * ph, c * ph]], dtype=complex)


def eigh(m, *, tol_herm: float = TOL_HERM, max_sweeps: int = 60) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps."""
    a = np.array(as_matrix(m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix contains non-finite entries")
    n = a.shape[0]
    if n and np.max(np.abs(a - a.conj().T)) > tol_herm:
        raise NotHermitian("eigh requires a Hermitian matrix")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    prev = np.inf
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= 1e-15 * scale or off == 0.0:
            break
        # roundoff floor: a sweep that no longer reduces the off-diagonal mass
        if off >= prev and off <= 1e-12 * scale:
            break
        prev = off
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= 1e-18 * scale:
                    continue
                g = _jacobi_rotation(a[p, p].real, a[q, q].real, a[p, q])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    lam = np.real(np.diag(a))
    order = np.argsort(lam, kind="stable")
    return Spectrum(lam[order], v[:, order])


def shannon_entropy(probs) -> float:
    """Entropy in bits of a (possibly unnormalized) weight vector, 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float).ravel()
    p = p[p > ZERO_EIG]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def von_neumann_entropy(rho) -> float:
    """``-Tr rho log2 rho`` in bits."""
    if isinstance(rho, DensityMatrix):
        lam = rho.eigenvalues
    else:
        lam = eigh(rho).eigenvalues
    return shannon_entropy(lam)


def relative_entropy(rho, sigma, *, tol_supp: float = TOL_SUPP) -> float:
    """Quantum relative entropy ``S(rho || sigma)`` in bits.

    Raises
    ------
    SupportViolation
        If ``rho`` has weight above ``tol_supp`` outside the support of
        ``sigma`` (the relative entropy diverges).
    """
    r = as_matrix(rho)
    s = as_matrix(sigma)
    if r.shape != s.shape:
        raise DimensionMismatch(f"shapes {r.shape} and {s.shape} differ")
    spec = sigma.spectrum if isinstance(sigma, DensityMatrix) else eigh(s)
    weights = np.real(np.einsum("ik,ij,jk->k", spec.eigenvectors.conj(), r, spec.eigenvectors))
    kernel = spec.eigenvalues <= tol_supp
    leak = float(np.sum(weights[kernel]))
    if leak > tol_supp:
        raise SupportViolation(f"rho has weight {leak:.3e} outside the support of sigma")
    cross = float(np.sum(weights[~kernel] * np.log2(spec.eigenvalues[~kernel])))
    value = -von_neumann_entropy(rho) - cross
    if value < -1e-10:
        raise SupportViolation(f"negative relative entropy {value:.3e}")
    return max(0.0, value)


def maximally_mixed(dim_a: int, dim_b: int = 1) -> DensityMatrix:
    d = dim_a * dim_b
    return DensityMatrix(np.eye(d) / d, dim_a, dim_b)


def pure_state(psi, dim_a: int, dim_b: int = 1) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()), dim_a, dim_b)


def random_density(dim_a: int, dim_b: int = 1, rng=None, rank: int | None = None) -> DensityMatrix:
    """Random state ``G G^dag / Tr`` with complex Gaussian ``G`` (Hilbert-Schmidt for full rank)."""
    rng = np.random.default_rng(rng)
    d = dim_a * dim_b
    k = d if rank is None else rank
    g = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    m = g @ g.conj().T
    return DensityMatrix(m / np.real(np.trace(m)), dim_a, dim_b)


def random_unitary(d: int, rng=None) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    rng = np.random.default_rng(rng)
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
