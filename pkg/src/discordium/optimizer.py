"""Coarse grid search followed by Nelder-Mead refinement.

Objectives are batched: they map an ``(n, k)`` array of parameter vectors to
``n`` values. Grid chunks may be evaluated on a thread pool; the reduction
is an argmin over the full, lexicographically ordered grid, so results do
not depend on the thread count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

BatchObjective = Callable[[np.ndarray], np.ndarray]

ANGLE = "angle"
PHASE = "phase"
CHUNK = 16384


@dataclass(frozen=True)
class OptimizerConfig:
    coarse_grid_points_per_angle: int = 24
    refinement_iterations: int = 200
    refinement_tolerance: float = 1e-9
    restarts: int = 8
    # cap on coarse grid size; high-dimensional searches use fewer points per angle
    max_grid_points: int = 2**18

    def __post_init__(self):
        for name in ("coarse_grid_points_per_angle", "refinement_iterations", "restarts", "max_grid_points"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not self.refinement_tolerance > 0:
            raise ValueError("refinement_tolerance must be > 0")

    def grid_density(self, n_params: int) -> int:
        d = self.coarse_grid_points_per_angle
        while d > 2 and d**n_params > self.max_grid_points:
            d -= 1
        return d

    def n_restarts(self, n_params: int) -> int:
        return self.restarts if n_params <= 2 else 2 * self.restarts


@dataclass(frozen=True)
class SearchResult:
    x: np.ndarray
    value: float
    evals: int
    grid_density: int


def thread_count() -> int:
    raw = os.environ.get("DISCORDIUM_THREADS", "0").strip() or "0"
    n = int(raw)
    return n if n > 0 else (os.cpu_count() or 1)


def axis_points(kind: str, density: int) -> np.ndarray:
    if kind == ANGLE:
        return np.linspace(0.0, np.pi / 2, density)
    return np.arange(density) * (2 * np.pi / density)


def grid_chunks(layout: Sequence[str], density: int, chunk: int = CHUNK):
    """Yield consecutive blocks of the full product grid in lexicographic order."""
    axes = [axis_points(kind, density) for kind in layout]
    shape = tuple(len(a) for a in axes)
    total = int(np.prod(shape))
    for start in range(0, total, chunk):
        idx = np.unravel_index(np.arange(start, min(start + chunk, total)), shape)
        yield np.stack([a[i] for a, i in zip(axes, idx)], axis=1)


def evaluate_grid(objective: BatchObjective, layout: Sequence[str], density: int) -> tuple[np.ndarray, np.ndarray]:
    """All grid points and their objective values."""
    chunks = list(grid_chunks(layout, density))
    threads = min(thread_count(), len(chunks))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(objective, chunks))
    else:
        values = [objective(c) for c in chunks]
    return np.concatenate(chunks), np.concatenate(values)


def _initial_simplex(x0: np.ndarray, layout: Sequence[str], density: int) -> np.ndarray:
    simplex = [x0]
    for i, kind in enumerate(layout):
        x = x0.copy()
        if kind == ANGLE:
            h = 0.5 * (np.pi / 2) / max(density - 1, 1)
            x[i] = x[i] + h if x[i] + h <= np.pi / 2 else x[i] - h
        else:
            x[i] += 0.5 * 2 * np.pi / density
        simplex.append(x)
    return np.array(simplex)


def _distinct_starts(points: np.ndarray, order: np.ndarray, layout: Sequence[str], density: int, k: int) -> list[int]:
    """Best grid points, skipping any within one grid step of an earlier pick."""
    step = np.array(
        [(np.pi / 2) / max(density - 1, 1) if kind == ANGLE else 2 * np.pi / density for kind in layout]
    )
    periodic = np.array([kind == PHASE for kind in layout])
    chosen: list[int] = []
    for idx in order:
        x = points[idx]
        near = False
        for c in chosen:
            d = np.abs(points[c] - x)
            d = np.where(periodic, np.minimum(d, 2 * np.pi - d), d)
            if np.all(d <= 1.01 * step):
                near = True
                break
        if not near:
            chosen.append(int(idx))
            if len(chosen) == k:
                break
    return chosen


def grid_then_refine(objective: BatchObjective, layout: Sequence[str], cfg: OptimizerConfig) -> SearchResult:
    """Minimize ``objective`` over the angle/phase box described by ``layout``."""
    n = len(layout)
    density = cfg.grid_density(n)
    points, values = evaluate_grid(objective, layout, density)
    evals = len(values)
    order = np.argsort(values, kind="stable")
    best_x, best_v = points[order[0]].copy(), float(values[order[0]])

    bounds = [(0.0, np.pi / 2) if kind == ANGLE else (None, None) for kind in layout]
    head = order[: 64 * cfg.n_restarts(n)]
    for start in _distinct_starts(points, head, layout, density, cfg.n_restarts(n)):
        x0 = points[start]

        def single(x):
            return float(objective(np.asarray(x)[None, :])[0])

        res = minimize(
            single,
            x0,
            method="Nelder-Mead",
            bounds=bounds,
            options={
                "maxiter": cfg.refinement_iterations * n,
                "xatol": cfg.refinement_tolerance,
                "fatol": cfg.refinement_tolerance,
                "initial_simplex": _initial_simplex(x0, layout, density),
            },
        )
        evals += int(res.nfev)
        if res.fun < best_v:
            best_x, best_v = np.asarray(res.x, dtype=float), float(res.fun)
    return SearchResult(best_x, best_v, evals, density)
