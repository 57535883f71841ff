"""SU(N) generators and the Fano (generalized Bloch) form of bipartite states.

Generators are ordered as all symmetric ``U_jk`` (lexicographic ``j < k``),
then all antisymmetric ``V_jk``, then the diagonal ``W_l``. For ``N = 2``
this is the Pauli order (x, y, z). For ``N = 3`` it is a permutation of the
standard Gell-Mann numbering; see :data:`GELL_MANN_ORDER`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange
from .linalg import DensityMatrix, validate_density

# Gell-Mann lambda_1..lambda_8 -> position in generators(3)
GELL_MANN_ORDER = (0, 3, 6, 1, 4, 2, 5, 7)


def projector(j: int, k: int, n: int) -> np.ndarray:
    """``|j><k|`` in dimension ``n`` with 1-based indices."""
    if not (1 <= j <= n and 1 <= k <= n):
        raise IndexOutOfRange(f"indices ({j}, {k}) outside 1..{n}")
    p = np.zeros((n, n), dtype=complex)
    p[j - 1, k - 1] = 1.0
    return p


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    matrices: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.matrices)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)

    def stack(self) -> np.ndarray:
        """All generators as an array of shape ``(N**2 - 1, N, N)``."""
        return np.array(self.matrices)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@lru_cache(maxsize=None)
def generators(n: int) -> GeneratorSet:
    """The ``n**2 - 1`` generalized Pauli matrices, normalized to ``Tr(l_i l_j) = 2 d_ij``."""
    if n < 2:
        raise IndexOutOfRange(f"SU(N) needs N >= 2, got {n}")
    pairs = list(combinations(range(1, n + 1), 2))
    mats, labels = [], []
    for j, k in pairs:
        mats.append(projector(j, k, n) + projector(k, j, n))
        labels.append(f"U{j}{k}")
    for j, k in pairs:
        mats.append(-1j * (projector(j, k, n) - projector(k, j, n)))
        labels.append(f"V{j}{k}")
    for l in range(1, n):
        w = sum(projector(m, m, n) for m in range(1, l + 1)) - l * projector(l + 1, l + 1, n)
        mats.append(np.sqrt(2.0 / (l * (l + 1))) * w)
        labels.append(f"W{l}")
    for m in mats:
        m.setflags(write=False)
    return GeneratorSet(n, tuple(mats), tuple(labels))


def pauli() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return generators(2).matrices  # type: ignore[return-value]


def gell_mann() -> tuple[np.ndarray, ...]:
    """Gell-Mann matrices in the conventional lambda_1..lambda_8 order."""
    g = generators(3)
    return tuple(g[i] for i in GELL_MANN_ORDER)


def diagonal_mask(n: int) -> np.ndarray:
    """Boolean mask over ``generators(n)`` selecting the diagonal ``W_l``."""
    return np.array([lab.startswith("W") for lab in generators(n).labels])


def pinch_computational(m) -> np.ndarray:
    """``sum_k P_kk M P_kk``, built from the rank-1 projectors."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    out = np.zeros_like(m)
    for k in range(1, n + 1):
        p = projector(k, k, n)
        out += p @ m @ p
    return out


def dephasing_residuals(n: int) -> dict[str, float]:
    """Largest deviations from the pinching identities of the generators.

    Returns the max-abs entry of ``sum_k P_kk X P_kk`` over all ``U`` and
    ``V`` generators, and of ``sum_k P_kk W P_kk - W`` over all ``W``.
    """
    g = generators(n)
    res = {"U": 0.0, "V": 0.0, "W": 0.0}
    for lab, m in zip(g.labels, g.matrices):
        pinched = pinch_computational(m)
        kind = lab[0]
        dev = pinched - m if kind == "W" else pinched
        res[kind] = max(res[kind], float(np.max(np.abs(dev))))
    return res


def _coefficient_name(kind: str, *idx: int) -> str:
    return kind + "".join(f".{i + 1}" for i in idx)


@dataclass(frozen=True, eq=False)
class FanoCoefficients:
    """Real Fano coefficients ``alpha_i``, ``beta_j``, ``gamma_ij`` (0-based arrays)."""

    dim_a: int
    dim_b: int
    alpha: np.ndarray = field(default=None)  # type: ignore[assignment]
    beta: np.ndarray = field(default=None)  # type: ignore[assignment]
    gamma: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        na, nb = self.dim_a**2 - 1, self.dim_b**2 - 1
        shapes = {"alpha": (na,), "beta": (nb,), "gamma": (na, nb)}
        for name, shape in shapes.items():
            v = getattr(self, name)
            v = np.zeros(shape) if v is None else np.array(v, dtype=float)
            if v.shape != shape:
                raise DimensionMismatch(f"{name} has shape {v.shape}, expected {shape}")
            if not np.all(np.isfinite(v)):
                raise ValueError(f"{name} contains non-finite entries")
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @classmethod
    def zeros(cls, dim_a: int, dim_b: int) -> "FanoCoefficients":
        return cls(dim_a, dim_b)

    @classmethod
    def from_named(cls, dim_a: int, dim_b: int, values: dict[str, float]) -> "FanoCoefficients":
        """Build from keys ``alpha.i``, ``beta.j``, ``gamma.i.j`` (1-based)."""
        alpha = np.zeros(dim_a**2 - 1)
        beta = np.zeros(dim_b**2 - 1)
        gamma = np.zeros((dim_a**2 - 1, dim_b**2 - 1))
        for key, val in values.items():
            kind, *idx = key.split(".")
            try:
                ix = tuple(int(i) - 1 for i in idx)
                target = {"alpha": alpha, "beta": beta, "gamma": gamma}[kind]
                if len(ix) != target.ndim or min(ix) < 0:
                    raise IndexError
                target[ix] = val
            except (KeyError, ValueError, IndexError):
                raise IndexOutOfRange(f"invalid Fano coefficient key {key!r}") from None
        return cls(dim_a, dim_b, alpha, beta, gamma)

    def named(self, nonzero_only: bool = False, atol: float = 0.0) -> dict[str, float]:
        out: dict[str, float] = {}
        for i, v in enumerate(self.alpha):
            out[_coefficient_name("alpha", i)] = float(v)
        for j, v in enumerate(self.beta):
            out[_coefficient_name("beta", j)] = float(v)
        for (i, j), v in np.ndenumerate(self.gamma):
            out[_coefficient_name("gamma", i, j)] = float(v)
        if nonzero_only:
            out = {k: v for k, v in out.items() if abs(v) > atol}
        return out


def fano_matrix(c: FanoCoefficients) -> np.ndarray:
    """Unvalidated matrix of the Fano expansion."""
    ga = generators(c.dim_a).stack() if c.dim_a > 1 else np.zeros((0, 1, 1))
    gb = generators(c.dim_b).stack() if c.dim_b > 1 else np.zeros((0, 1, 1))
    ia, ib = np.eye(c.dim_a), np.eye(c.dim_b)
    la = np.einsum("i,ijk->jk", c.alpha, ga)
    lb = np.einsum("j,jkl->kl", c.beta, gb)
    corr = np.einsum("ij,iab,jcd->acbd", c.gamma, ga, gb).reshape(c.dim_a * c.dim_b, -1)
    m = np.kron(ia, ib) + np.kron(la, ib) + np.kron(ia, lb) + corr
    return m / (c.dim_a * c.dim_b)


def fano_compose(c: FanoCoefficients) -> DensityMatrix:
    """Density matrix of the Fano expansion; raises NotPositive for non-PSD coefficients."""
    return validate_density(fano_matrix(c), c.dim_a, c.dim_b)


def fano_decompose(rho: DensityMatrix) -> FanoCoefficients:
    """Invert :func:`fano_compose` using ``Tr(l_i l_j) = 2 delta_ij``.

    ``alpha_i = (dA/2) Tr[rho (l_i x I)]``, ``beta_j = (dB/2) Tr[rho (I x l_j)]``
    and ``gamma_ij = (dA dB / 4) Tr[rho (l_i x l_j)]``.
    """
    da, db = rho.dim_a, rho.dim_b
    t = rho.tensor4()
    ga, gb = generators(da).stack(), generators(db).stack()
    red_a = np.einsum("abcb->ac", t)
    red_b = np.einsum("abad->bd", t)
    alpha = da / 2 * np.real(np.einsum("ac,ica->i", red_a, ga))
    beta = db / 2 * np.real(np.einsum("bd,jdb->j", red_b, gb))
    gamma = da * db / 4 * np.real(np.einsum("abcd,ica,jdb->ij", t, ga, gb))
    return FanoCoefficients(da, db, alpha, beta, gamma)
