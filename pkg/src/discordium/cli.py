"""Command-line interface.

Exit codes: 0 success, 1 failed regression items or other errors,
2 unreadable or malformed input, 3 invalid state or parameters,
4 unsupported dimensions.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import fields, replace

import numpy as np

from . import reproduce
from .discord import brute_force_oracle, quantum_discord
from .errors import DiscordiumError, ParameterOutOfRange, ParseError, UnsupportedDimension, ValidationError
from .linalg import partial_trace, von_neumann_entropy
from .optimizer import OptimizerConfig
from .reldiscord import classicality_conditions, relative_discord
from .stateio import format_fano, format_number, read_state_file
from .xstate import (
    example_discord_analytic,
    example_state,
    qubit_qutrit_state,
    random_qq_params,
    random_x2_params,
    x2_state,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_DIMENSION = 4

SWEEP_HEADER = ["param", "I", "J", "D", "D_rel_fixed", "D_rel_min", "analytic_D"]


def load_config(path: str | None, grid: int | None = None, restarts: int | None = None) -> OptimizerConfig:
    """Defaults, overridden by a JSON config file, overridden by flags."""
    cfg = OptimizerConfig()
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(OptimizerConfig)}
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        cfg = replace(cfg, **data)
    if grid is not None:
        cfg = replace(cfg, coarse_grid_points_per_angle=grid)
    if restarts is not None:
        cfg = replace(cfg, restarts=restarts)
    return cfg


def _load_state(path: str):
    return read_state_file(path).to_state()


def _fmt(x: float) -> str:
    return format_number(float(x))


def cmd_discord(args, out) -> int:
    rho = _load_state(args.input)
    cfg = load_config(args.config, args.grid, args.restarts)
    rep = quantum_discord(rho, args.side, cfg)
    p = rep.optimal_basis_params
    lines = {
        "side": rep.side,
        "I": _fmt(rep.mutual_information),
        "J": _fmt(rep.classical_correlation),
        "D": _fmt(rep.discord),
        "conditional_entropy": _fmt(rep.conditional_entropy),
        "basis_angles": " ".join(_fmt(a) for a in p.angles),
        "basis_phases": " ".join(_fmt(a) for a in p.phases),
        "optimizer_evals": str(rep.optimizer_evals),
    }
    if args.oracle:
        cond = brute_force_oracle(rho, args.side, args.oracle_grid)
        measured = partial_trace(rho, args.side)
        d_oracle = von_neumann_entropy(measured) - von_neumann_entropy(rho) + cond
        lines["D_oracle"] = _fmt(max(0.0, d_oracle))
    if args.dump_fano:
        with open(args.dump_fano, "w", encoding="utf-8") as fh:
            fh.write(format_fano(rho))
    for k, v in lines.items():
        print(f"{k} = {v}", file=out)
    return EXIT_OK


def cmd_reldiscord(args, out) -> int:
    rho = _load_state(args.input)
    cfg = load_config(args.config, args.grid, args.restarts)
    print(f"mode = {args.mode}", file=out)
    print(f"D_rel = {_fmt(relative_discord(rho, args.mode, cfg))}", file=out)
    return EXIT_OK


def cmd_check_classical(args, out) -> int:
    rho = _load_state(args.input)
    cfg = load_config(args.config, args.grid, args.restarts)
    rep = classicality_conditions(rho, cfg, tol=args.tol)
    print(f"classical_form = {'pass' if rep.is_paper_classical_form else 'fail'}", file=out)
    print(f"max_dephasing_deviation = {_fmt(rep.max_deviation)}", file=out)
    print(f"violated = {' '.join(rep.violated_coefficients) or '-'}", file=out)
    print(f"equality_gap = {_fmt(rep.equality_gap)}", file=out)
    print(f"D_rel_fixed = {_fmt(rep.relative_discord_fixed)}", file=out)
    print(f"D = {_fmt(rep.discord)}", file=out)
    return EXIT_OK


def _sweep_values(args) -> list[float]:
    if args.values:
        return [float(v) for v in args.values.split(",")]
    if args.step <= 0:
        raise ParameterOutOfRange("--step must be positive")
    n = int(np.floor((args.stop - args.start) / args.step + 1e-9)) + 1
    return [round(args.start + k * args.step, 12) for k in range(max(n, 0))]


def sweep_rows(args, cfg: OptimizerConfig) -> list[list[str]]:
    if args.family == "example":
        cases = [(p, example_state(p), example_discord_analytic(p)) for p in _sweep_values(args)]
    else:
        rng = np.random.default_rng(args.seed)
        draw = random_x2_params if args.family == "x2" else random_qq_params
        build = x2_state if args.family == "x2" else qubit_qutrit_state
        cases = [(k, build(draw(rng)), None) for k in range(args.count)]
    rows = []
    for param, rho, analytic in cases:
        rep = quantum_discord(rho, "B", cfg)
        rows.append([
            _fmt(param) if isinstance(param, float) else str(param),
            _fmt(rep.mutual_information),
            _fmt(rep.classical_correlation),
            _fmt(rep.discord),
            _fmt(relative_discord(rho, "fixed", cfg)),
            _fmt(relative_discord(rho, "min", cfg)),
            "" if analytic is None else _fmt(analytic),
        ])
    return rows


def cmd_sweep(args, out) -> int:
    cfg = load_config(args.config, args.grid, args.restarts)
    rows = sweep_rows(args, cfg)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    w.writerows(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    cfg = load_config(args.config, args.grid, args.restarts)
    items = reproduce.run_all(cfg, seed=args.seed)
    for item in items:
        print(f"{item.status:6s} {item.name}: observed {item.observed}; expected {item.expected}", file=out)
        if args.csv:
            reproduce.write_csv(item, args.csv)
    failed = [i for i in items if i.fatal and not i.passed]
    print(f"{len(items) - len(failed)}/{len(items)} items without fatal failure", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_dump_fano(args, out) -> int:
    text = format_fano(_load_state(args.input))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _add_optimizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=int, help="coarse grid points per angle")
    p.add_argument("--restarts", type=int, help="number of simplex restarts")
    p.add_argument("--config", help="JSON file with optimizer settings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discordium", description="Quantum correlations of bipartite states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discord", help="mutual information, classical correlation and discord")
    p.add_argument("input")
    p.add_argument("--side", choices=["A", "B"], default="B", help="measured subsystem (B: right discord)")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force grid oracle")
    p.add_argument("--oracle-grid", type=int, default=24, help="oracle grid points per axis")
    p.add_argument("--dump-fano", metavar="PATH", help="write the state's Fano listing to PATH")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_discord)

    p = sub.add_parser("reldiscord", help="relative entropy of discord")
    p.add_argument("input")
    p.add_argument("--mode", choices=["fixed", "min"], default="min")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_reldiscord)

    p = sub.add_parser("check-classical", help="dephasing and Fano-coefficient classicality conditions")
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=1e-6)
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_check_classical)

    p = sub.add_parser("sweep", help="CSV of correlations over a state family")
    p.add_argument("--family", choices=["example", "x2", "qq"], default="example")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=0.5)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--values", help="comma-separated parameter values (example family)")
    p.add_argument("--count", type=int, default=5, help="number of random states (x2, qq)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="output file (default: stdout)")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("reproduce-paper", help="run the regression checks")
    p.add_argument("--csv", metavar="DIR", help="write one CSV per item into DIR")
    p.add_argument("--seed", type=int, default=0)
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("dump-fano", help="print the Fano coefficient listing of a state")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dump_fano)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedDimension as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (ValidationError, ParameterOutOfRange, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DiscordiumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
