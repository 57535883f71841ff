"""Regression checks on the qubit-qutrit example, X-states and generator identities.

Each check returns a :class:`CheckItem` with observed and expected values
and, where useful, per-row data for CSV export. Non-fatal items are
reported without affecting the overall verdict.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np

from .discord import quantum_discord
from .linalg import partial_trace, von_neumann_entropy
from .measurement import computational_basis, dephase
from .optimizer import OptimizerConfig
from .reldiscord import closest_classical
from .stateio import format_number
from .sun import dephasing_residuals, fano_decompose, gell_mann, generators
from .xstate import (
    example_chi_entropy,
    example_discord_analytic,
    example_discord_projective_optimum,
    example_state,
    qq_spectrum_crosscheck,
    random_qq_params,
    random_x2_params,
    x2_state,
)

P_GRID = tuple(round(0.05 * k, 10) for k in range(11))


@dataclass
class CheckItem:
    name: str
    passed: bool
    observed: str
    expected: str
    fatal: bool = True
    header: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL" if self.fatal else "REPORT"


def check_closest_classical(p_grid=P_GRID, tol: float = 1e-14) -> CheckItem:
    rows, worst = [], 0.0
    for p in p_grid:
        chi = closest_classical(example_state(p)).matrix
        want = 0.5 * np.diag([p, p, 1 - 2 * p, 1 - 2 * p, p, p])
        err = float(np.max(np.abs(chi - want)))
        worst = max(worst, err)
        rows.append([p, err])
    return CheckItem("closest_classical_example", worst <= tol, f"max |chi - diag| = {worst:.3e}",
                     f"<= {tol:g}", header=["p", "max_abs_error"], rows=rows)


def check_reduced_states(p_grid=P_GRID, tol: float = 1e-14) -> CheckItem:
    rows, worst = [], 0.0
    for p in p_grid:
        rho = example_state(p)
        ea = float(np.max(np.abs(partial_trace(rho, "A").matrix - np.eye(2) / 2)))
        eb = float(np.max(np.abs(partial_trace(rho, "B").matrix - 0.5 * np.diag([1 - p, 2 * p, 1 - p]))))
        worst = max(worst, ea, eb)
        rows.append([p, ea, eb])
    return CheckItem("reduced_states_example", worst <= tol, f"max error = {worst:.3e}", f"<= {tol:g}",
                     header=["p", "err_rho_A", "err_rho_B"], rows=rows)


def check_chi_entropy(p_grid=P_GRID, tol: float = 1e-12) -> CheckItem:
    rows, worst = [], 0.0
    for p in p_grid:
        s = von_neumann_entropy(closest_classical(example_state(p)))
        ref = example_chi_entropy(p)
        worst = max(worst, abs(s - ref))
        rows.append([p, s, ref])
    at_quarter = von_neumann_entropy(closest_classical(example_state(0.25)))
    ok = worst <= tol and abs(at_quarter - 2.5) <= tol
    return CheckItem("chi_entropy_identity", ok, f"max gap {worst:.3e}; S(chi) at p=1/4 = {at_quarter:.15f}",
                     f"gap <= {tol:g}; 2.5", header=["p", "S_chi_numeric", "closed_form"], rows=rows)


def check_discord_sweep(cfg: OptimizerConfig | None = None, p_grid=P_GRID, tol: float = 1e-3) -> CheckItem:
    rows, worst = [], 0.0
    for p in p_grid:
        d = quantum_discord(example_state(p), "B", cfg).discord
        ref = example_discord_analytic(p)
        worst = max(worst, abs(d - ref))
        rows.append([p, d, ref, example_discord_projective_optimum(p)])
    return CheckItem("discord_sweep_example", worst <= tol, f"max |D - (1-p)| = {worst:.3e}", f"<= {tol:g}",
                     header=["p", "D_optimized", "one_minus_p", "I_minus_one_minus_p"], rows=rows)


def check_two_qubit_conditions(n: int = 20, seed: int = 0, tol_coeff: float = 1e-14,
                               tol_dephase: float = 1e-12) -> CheckItem:
    rng = np.random.default_rng(seed)
    ca = computational_basis(2)
    idx = [("alpha", 0), ("alpha", 1), ("beta", 0), ("beta", 1)]
    pairs = [(0, 2), (2, 0), (1, 2), (2, 1)]
    worst_c = worst_d = 0.0
    rows = []
    for k in range(n):
        rho = x2_state(random_x2_params(rng))
        c = fano_decompose(rho)
        vals = [getattr(c, kind)[i] for kind, i in idx] + [c.gamma[i, j] for i, j in pairs]
        ec = float(np.max(np.abs(vals)))
        chi = dephase(rho, ca, ca, "both").matrix
        ra = dephase(rho, ca, None, "A").matrix
        rb = dephase(rho, None, ca, "B").matrix
        ed = float(max(np.max(np.abs(chi - ra)), np.max(np.abs(chi - rb))))
        worst_c, worst_d = max(worst_c, ec), max(worst_d, ed)
        rows.append([k, ec, ed])
    ok = worst_c <= tol_coeff and worst_d <= tol_dephase
    return CheckItem("x_state_conditions", ok, f"coeff {worst_c:.3e}, dephasing {worst_d:.3e}",
                     f"<= {tol_coeff:g}, <= {tol_dephase:g}", header=["sample", "max_coeff", "max_dephase_gap"],
                     rows=rows)


def check_dephasing_identities(ns=(2, 3, 4), tol: float = 1e-15) -> CheckItem:
    rows, worst = [], 0.0
    for n in ns:
        r = dephasing_residuals(n)
        worst = max(worst, *r.values())
        rows.append([n, r["U"], r["V"], r["W"]])
    return CheckItem("dephasing_identities", worst <= tol, f"max residual {worst:.3e}", f"<= {tol:g}",
                     header=["N", "U_residual", "V_residual", "W_residual"], rows=rows)


def generator_algebra_error(n: int) -> float:
    g = generators(n).stack()
    gram = np.einsum("iab,jba->ij", g, g)
    herm = np.max(np.abs(g - np.conj(np.swapaxes(g, 1, 2))))
    trace = np.max(np.abs(np.einsum("iaa->i", g)))
    return float(max(herm, trace, np.max(np.abs(gram - 2 * np.eye(len(g))))))


def check_generators(ns=(2, 3, 4, 5), tol: float = 1e-14) -> CheckItem:
    rows = [[n, len(generators(n)), generator_algebra_error(n)] for n in ns]
    worst = max(r[2] for r in rows)
    sigma = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    pauli_ok = all(np.array_equal(a, b) for a, b in zip(generators(2).matrices, sigma))
    lam8 = gell_mann()
    gm_ok = np.allclose(lam8[2], np.diag([1, -1, 0])) and np.allclose(lam8[7], np.diag([1, 1, -2]) / np.sqrt(3))
    counts_ok = all(r[1] == r[0] ** 2 - 1 for r in rows)
    ok = worst <= tol and pauli_ok and gm_ok and counts_ok
    return CheckItem("generator_algebra", ok, f"max error {worst:.3e}; Pauli {pauli_ok}; Gell-Mann {gm_ok}",
                     f"<= {tol:g}", header=["N", "count", "max_error"], rows=rows)


def check_qq_spectrum(n: int = 50, seed: int = 0, tol: float = 1e-8) -> CheckItem:
    rng = np.random.default_rng(seed)
    rows = []
    for k in range(n):
        c = qq_spectrum_crosscheck(random_qq_params(rng), tol=tol)
        rows.append([k, c.phi_error, c.psi_error, int(c.phi_matches), int(c.psi_matches)])
    phi_ok = sum(r[3] for r in rows)
    psi_ok = sum(r[4] for r in rows)
    return CheckItem("qubit_qutrit_spectrum_crosscheck", phi_ok == n and psi_ok == n,
                     f"Phi agrees {phi_ok}/{n}, Psi agrees {psi_ok}/{n}", f"{n}/{n} within {tol:g}",
                     fatal=False, header=["draw", "phi_error", "psi_error", "phi_match", "psi_match"], rows=rows)


def run_all(cfg: OptimizerConfig | None = None, seed: int = 0) -> list[CheckItem]:
    return [
        check_closest_classical(),
        check_reduced_states(),
        check_chi_entropy(),
        check_discord_sweep(cfg),
        check_two_qubit_conditions(seed=seed),
        check_dephasing_identities(),
        check_generators(),
        check_qq_spectrum(seed=seed),
    ]


def _cell(v) -> str:
    if isinstance(v, float):
        return format_number(v)
    return str(v)


def write_csv(item: CheckItem, directory) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"{item.name}.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(item.header)
        for row in item.rows:
            w.writerow([_cell(v) for v in row])
    return path
