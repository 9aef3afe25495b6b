"""
Ensemble spectral density from the block-reduced cavity equations
"""
import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.integrate import trapezoid

from src.config import config
from src.ensemble.models import BlockModel
from src.cavity.solver import (
    CavityConvergenceError,
    SolverParams,
    SpectralPoint,
    solve_block_cavity,
)


logger = logging.getLogger(__name__)


@dataclass
class DensityCurve:
    """Spectral density sampled on a sorted grid"""

    lambdas: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        self.lambdas = np.asarray(self.lambdas, dtype=np.float64)
        self.rho = np.asarray(self.rho, dtype=np.float64)
        if self.lambdas.shape != self.rho.shape:
            raise ValueError(f"Grid and density lengths differ: {self.lambdas.shape} vs {self.rho.shape}")

    def integral(self) -> float:
        """Trapezoid mass of the curve"""
        if self.lambdas.size < 2:
            return 0.0
        return float(trapezoid(self.rho, self.lambdas))

    def to_csv(self, path: Path) -> Path:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=["lambda", "rho"], lineterminator="\n")
            writer.writeheader()
            for lam, rho in zip(self.lambdas, self.rho):
                writer.writerow({"lambda": format_float(lam), "rho": format_float(rho)})
        return path


def format_float(value: float) -> str:
    """Stable text form for CSV cells"""
    return f"{float(value):.12g}"


def default_grid(model: BlockModel, points: int | None = None) -> np.ndarray:
    """Evenly spaced grid over [-(c+1), c+1], c the largest total degree"""
    points = points or config.GRID_POINTS
    half_width = model.degree + 1.0
    return np.linspace(-half_width, half_width, points)


def _block_weights(model: BlockModel) -> np.ndarray:
    sizes = np.asarray(model.sizes, dtype=np.float64)
    return sizes / sizes.sum()


def density_curve(
    model: BlockModel,
    lambda_grid,
    epsilon: float | None = None,
    params: SolverParams | None = None,
    warm_start: bool = True,
    workers: int = 1,
) -> DensityCurve:
    """
    Evaluate rho(lambda) = (1/pi) sum_a (N_a/N) Im D_a(lambda - i*epsilon) on a grid.

    With equal blocks the weights are 1/m. Sequential evaluation warm-starts
    each point from the previous solution and falls back to a cold start when
    the warm start fails; independent evaluation (warm_start=False) may run on
    several threads.

    Args:
        model: Block model
        lambda_grid: Sorted spectral positions
        epsilon: Regularizer (default EPSILON_PLOT)
        params: Solver controls
        warm_start: Reuse the previous point's messages
        workers: Threads for independent evaluation

    Returns:
        DensityCurve

    Raises:
        ValueError: If the grid is unsorted or epsilon is not positive
        CavityConvergenceError: With the offending lambda, if a point fails cold
    """
    epsilon = config.EPSILON_PLOT if epsilon is None else epsilon
    params = params or SolverParams()
    grid = np.asarray(lambda_grid, dtype=np.float64)
    if grid.size > 1 and np.any(np.diff(grid) < 0):
        raise ValueError("lambda grid must be sorted")
    weights = _block_weights(model)

    def solve_cold(lam: float) -> float:
        return solve_block_cavity(model, SpectralPoint(float(lam), epsilon), params).density(weights)

    if not warm_start:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rho = list(pool.map(solve_cold, grid))
        else:
            rho = [solve_cold(lam) for lam in grid]
        return DensityCurve(lambdas=grid, rho=np.array(rho))

    rho = np.empty_like(grid)
    previous = None
    for k, lam in enumerate(grid):
        point = SpectralPoint(float(lam), epsilon)
        try:
            solution = solve_block_cavity(model, point, params, initial=previous)
        except CavityConvergenceError:
            if previous is None:
                raise
            logger.warning(f"Warm start failed at lambda={lam}, retrying from a cold start")
            solution = solve_block_cavity(model, point, params)
        rho[k] = solution.density(weights)
        previous = solution.messages

    logger.info(f"Density curve on {grid.size} points (epsilon={epsilon}), mass {DensityCurve(grid, rho).integral():.4f}")
    return DensityCurve(lambdas=grid, rho=rho)
