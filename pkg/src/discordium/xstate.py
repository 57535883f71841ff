"""Two-qubit X-states, the qubit-qutrit family, and the qubit-qutrit example state.

The qubit-qutrit family uses the conventional Gell-Mann numbering
(``lambda_3 = diag(1, -1, 0)``, ``lambda_8 = diag(1, 1, -2)/sqrt(3)``) with an
extra ``sqrt(3)`` on the local qutrit coefficients:

    rho = (1/6) (I + sum a_i s_i x I + sqrt(3) sum b_j I x l_j + sum g_ij s_i x l_j)

Product basis order is ``|a b>`` with ``a`` the slow index.
"""
from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import ParameterOutOfRange
from .linalg import ZERO_EIG, DensityMatrix, eigh, validate_density
from .sun import FanoCoefficients, fano_compose, fano_matrix, gell_mann, pauli

SQRT3 = np.sqrt(3.0)


@dataclass(frozen=True)
class XState2Params:
    alpha3: float = 0.0
    beta3: float = 0.0
    gamma11: float = 0.0
    gamma12: float = 0.0
    gamma21: float = 0.0
    gamma22: float = 0.0
    gamma33: float = 0.0

    def fano(self) -> FanoCoefficients:
        gamma = np.zeros((3, 3))
        gamma[0, 0], gamma[0, 1] = self.gamma11, self.gamma12
        gamma[1, 0], gamma[1, 1] = self.gamma21, self.gamma22
        gamma[2, 2] = self.gamma33
        return FanoCoefficients(2, 2, [0, 0, self.alpha3], [0, 0, self.beta3], gamma)


def x2_state(p: XState2Params) -> DensityMatrix:
    """Two-qubit X-state from its surviving Fano coefficients.

    Diagonal entries are ``(1 +- gamma33 +- alpha3 +- beta3)/4``. The
    anti-diagonal entries follow from the Pauli products:
    ``rho_14 = (g11 - g22 - i(g12 + g21))/4`` and
    ``rho_23 = (g11 + g22 + i(g12 - g21))/4``.
    """
    return fano_compose(p.fano())


def x2_printed_entries(p: XState2Params) -> dict[str, float]:
    """Entry formulas as printed alongside the two-qubit X-state (no 1/4 factor).

    Kept for comparison only: the printed ``rho_14`` and ``rho_23`` agree with
    :func:`x2_state` only when ``gamma12 = gamma21 = gamma22 = 0``.
    """
    a, b, g33 = p.alpha3, p.beta3, p.gamma33
    return {
        "rho11": 1 + g33 + a + b,
        "rho22": 1 - g33 + a - b,
        "rho33": 1 - g33 - a + b,
        "rho44": 1 + g33 - a - b,
        "rho14": p.gamma11 + p.gamma12 - p.gamma21 - p.gamma22,
        "rho23": p.gamma11 + p.gamma12 + p.gamma21 + p.gamma22,
    }


def _is_psd(m: np.ndarray) -> bool:
    return bool(np.linalg.eigvalsh(m)[0] >= 0.0)


def random_x2_params(rng=None, max_tries: int = 100000) -> XState2Params:
    """Uniform draw from the valid region inside the box ``[-1, 1]^7``."""
    rng = np.random.default_rng(rng)
    for _ in range(max_tries):
        p = XState2Params(*rng.uniform(-1.0, 1.0, size=7))
        if _is_psd(fano_matrix(p.fano())):
            return p
    raise RuntimeError("rejection sampling failed")


@dataclass(frozen=True)
class QubitQutritParams:
    alpha3: float = 0.0
    beta3: float = 0.0
    beta8: float = 0.0
    gamma33: float = 0.0
    gamma38: float = 0.0
    gamma14: float = 0.0
    gamma15: float = 0.0
    gamma24: float = 0.0
    gamma25: float = 0.0


def qubit_qutrit_matrix(p: QubitQutritParams) -> np.ndarray:
    """Unvalidated 6x6 matrix of the qubit-qutrit family."""
    s = (None,) + tuple(pauli())
    lam = (None,) + tuple(gell_mann())
    i2, i3 = np.eye(2), np.eye(3)
    m = np.kron(i2, i3).astype(complex)
    m += p.alpha3 * np.kron(s[3], i3)
    m += SQRT3 * (p.beta3 * np.kron(i2, lam[3]) + p.beta8 * np.kron(i2, lam[8]))
    for (i, j), g in {
        (3, 3): p.gamma33,
        (3, 8): p.gamma38,
        (1, 4): p.gamma14,
        (1, 5): p.gamma15,
        (2, 4): p.gamma24,
        (2, 5): p.gamma25,
    }.items():
        m += g * np.kron(s[i], lam[j])
    return m / 6.0


def qubit_qutrit_state(p: QubitQutritParams) -> DensityMatrix:
    return validate_density(qubit_qutrit_matrix(p), 2, 3)


def random_qq_params(rng=None, scale: float = 0.6, max_tries: int = 100000) -> QubitQutritParams:
    """Uniform draw from the valid region inside ``[-scale, scale]^9``."""
    rng = np.random.default_rng(rng)
    n = len(fields(QubitQutritParams))
    for _ in range(max_tries):
        p = QubitQutritParams(*rng.uniform(-scale, scale, size=n))
        if _is_psd(qubit_qutrit_matrix(p)):
            return p
    raise RuntimeError("rejection sampling failed")


def _radical(x: float) -> float:
    return float(np.sqrt(x)) if x >= 0 else float("nan")


def qq_spectrum_analytic(p: QubitQutritParams) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form ``Phi_1..6`` (pinched spectrum) and ``Psi_1..6`` (state spectrum) as printed.

    Evaluated verbatim, including the ``beta8`` terms. Known to disagree
    with direct diagonalization for some parameters; see
    :func:`qq_spectrum_crosscheck`.
    """
    a, b3, b8 = p.alpha3, p.beta3, p.beta8
    g33, g38 = p.gamma33, p.gamma38
    g14, g15, g24, g25 = p.gamma14, p.gamma15, p.gamma24, p.gamma25
    r3 = SQRT3
    phi = np.empty(6)
    phi[0] = (1 - 2 * b8 + a - 2 * g38 / r3) / 6
    phi[1] = (1 - 2 * b8 - a + 2 * g38 / r3) / 6
    phi[2] = (1 + r3 * b3 + b8 - a - g33 - g38 / r3) / 6
    phi[3] = (1 + r3 * b3 + b8 + a + g33 + g38 / r3) / 6
    phi[4] = (1 - r3 * b3 + b8 - a + g33 - g38 / r3) / 6
    phi[5] = (1 - r3 * b3 + b8 - a - g33 + g38 / r3) / 6

    rad12 = (
        9 * b3**2 + 27 * b8**2 + 36 * b8 * a + 12 * a**2
        + 12 * ((g15 + g24) ** 2 + (g14 - g25) ** 2)
        + 3 * g33**2
        + 6 * b3 * (3 * r3 * b8 + 2 * r3 * a + r3 * g33 - g38)
        - 6 * r3 * b8 * g38 - 4 * r3 * a * g38 + g38**2
        + 2 * g33 * (9 * b8 + 6 * a - r3 * g38)
    )
    rad34 = (
        9 * b3**2 + 27 * b8**2 - 36 * b8 * a + 12 * a**2
        + 12 * ((g15 - g24) ** 2 + (g14 + g25) ** 2)
        + 3 * g33**2
        + 6 * b3 * (3 * r3 * b8 - 2 * r3 * a - r3 * g33 + g38)
        + 6 * r3 * b8 * g38 - 4 * r3 * a * g38 + g38**2
        + 2 * g33 * (-9 * b8 + 6 * a - r3 * g38)
    )
    base12 = 6 + 3 * r3 * b3 - 3 * b8 + 3 * g33 + 3 * r3 * g38
    base34 = 6 + 3 * r3 * b3 - 3 * b8 - 3 * g33 - 3 * r3 * g38
    psi = np.empty(6)
    psi[0] = (base12 + r3 * _radical(rad12)) / 36
    psi[1] = (base12 - r3 * _radical(rad12)) / 36
    psi[2] = (base34 + r3 * _radical(rad34)) / 36
    psi[3] = (base34 - r3 * _radical(rad34)) / 36
    psi[4], psi[5] = phi[4], phi[5]
    return phi, psi


@dataclass(frozen=True)
class SpectrumCrosscheck:
    params: QubitQutritParams
    phi: np.ndarray
    psi: np.ndarray
    pinched_spectrum: np.ndarray
    state_spectrum: np.ndarray
    phi_error: float
    psi_error: float
    phi_matches: bool
    psi_matches: bool


def _sorted_distance(x: np.ndarray, y: np.ndarray) -> float:
    if not np.all(np.isfinite(x)):
        return float("inf")
    return float(np.max(np.abs(np.sort(x) - np.sort(y))))


def qq_spectrum_crosscheck(p: QubitQutritParams, tol: float = 1e-8) -> SpectrumCrosscheck:
    """Compare the printed closed forms with the diagonal and eigenvalues of the state."""
    m = qubit_qutrit_matrix(p)
    phi, psi = qq_spectrum_analytic(p)
    pinched = np.real(np.diag(m))
    spec = eigh(m).eigenvalues
    e_phi = _sorted_distance(phi, pinched)
    e_psi = _sorted_distance(psi, spec)
    return SpectrumCrosscheck(p, phi, psi, pinched, spec, e_phi, e_psi, e_phi <= tol, e_psi <= tol)


def _xlog(x: float) -> float:
    return x * np.log2(x) if x > ZERO_EIG else 0.0


def _check_p(p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= 0.5):
        raise ParameterOutOfRange(f"p must lie in [0, 1/2], got {p}")
    return p


def example_matrix(p: float) -> np.ndarray:
    p = _check_p(p)
    idx = {(a, b): 3 * a + b for a in range(2) for b in range(3)}
    m = np.zeros((6, 6))
    for ket, bra in [((0, 0), (0, 0)), ((0, 1), (0, 1)), ((0, 0), (1, 2)),
                     ((1, 1), (1, 1)), ((1, 2), (1, 2)), ((1, 2), (0, 0))]:
        m[idx[ket], idx[bra]] += p / 2
    for ket, bra in [((0, 2), (0, 2)), ((0, 2), (1, 0)), ((1, 0), (0, 2)), ((1, 0), (1, 0))]:
        m[idx[ket], idx[bra]] += (1 - 2 * p) / 2
    return m


def example_state(p: float) -> DensityMatrix:
    """Qubit-qutrit example mixing ``|00>+|12>`` (weight p), ``|02>+|10>``
    (weight 1-2p) and ``|01>``, ``|11>`` (weight p/2 each); valid for ``0 <= p <= 1/2``.

    Its spectrum is ``{p, 1-2p, p/2, p/2, 0, 0}``.
    """
    return validate_density(example_matrix(p), 2, 3)


def example_discord_analytic(p: float) -> float:
    """Closed-form discord value ``1 - p`` reported for the example state.

    This equals the discord evaluated with computational-basis projectors
    (and the fixed-basis relative entropy of discord), not the projective
    optimum; see :func:`example_discord_projective_optimum`.
    """
    return 1.0 - _check_p(p)


def example_discord_projective_optimum(p: float) -> float:
    """Optimized one-sided discord of the example state, ``I(p) - (1 - p)``.

    Measuring the qutrit in ``{(|0> +- |2>)/sqrt(2), |1>}`` leaves pure
    conditional qubit states except on outcome ``|1>``, so the measured
    conditional entropy is ``p``.
    """
    p = _check_p(p)
    return float(1 - p - _xlog(1 - p) + _xlog(p) + _xlog(1 - 2 * p))


def example_chi_entropy(p: float) -> float:
    """``1 - 2p log2 p - (1 - 2p) log2(1 - 2p)``, with ``0 log 0 = 0``."""
    p = _check_p(p)
    return float(1.0 - 2 * _xlog(p) - _xlog(1 - 2 * p))


def param_tuple(p) -> tuple[float, ...]:
    return astuple(p)
