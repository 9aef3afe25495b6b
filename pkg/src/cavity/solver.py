"""
Cavity equations for the resolvent diagonal of sparse symmetric 0/1 matrices.

Two solvers share one damped fixed-point loop:

- the block-reduced solver iterates m^2 messages D_a^(b), the cavity
  variance of a block-a vertex with one block-b neighbor removed;
- the instance solver iterates one message per directed edge of a concrete
  graph and serves as an oracle for the block-symmetric reduction.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
import yaml
from scipy import sparse

from src.config import config
from src.ensemble.models import BlockModel, Graph


logger = logging.getLogger(__name__)

# Uniform start on the physical branch (Im > 0 under z = lambda - i*epsilon)
INITIAL_MESSAGE = 1j

# Defects kept for the contraction-rate estimate
RATE_WINDOW = 5
# Defect relative to the message scale treated as exact
ROUNDING_FLOOR = 64 * np.finfo(np.float64).eps
# Newton steps applied to a converged block solution
NEWTON_STEPS = 3


class CavityConvergenceError(Exception):
    """Raised when the cavity iteration does not reach the tolerance within max_iter"""

    def __init__(self, message: str, residual: float, iterations: int, lambda_: float | None = None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.lambda_ = lambda_


@dataclass(frozen=True)
class SpectralPoint:
    """Spectral position lambda with regularizer epsilon; z = lambda - i*epsilon"""

    lambda_: float
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def z(self) -> complex:
        return complex(self.lambda_, -self.epsilon)


@dataclass(frozen=True)
class SolverParams:
    """Fixed-point iteration controls"""

    tol: float = field(default_factory=lambda: config.CAVITY_TOL)
    max_iter: int = field(default_factory=lambda: config.CAVITY_MAX_ITER)
    damping: float = field(default_factory=lambda: config.CAVITY_DAMPING)

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if not 0 < self.damping <= 1:
            raise ValueError(f"damping must lie in (0, 1], got {self.damping}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")


@dataclass
class CavitySolution:
    """Converged block-reduced cavity state at one spectral point"""

    point: SpectralPoint
    messages: np.ndarray
    block_variances: np.ndarray
    residual: float
    iterations: int

    def density(self, weights: np.ndarray | None = None) -> float:
        """(1/pi) times the (weighted) mean imaginary part of the block variances"""
        if weights is None:
            return float(np.mean(self.block_variances.imag) / np.pi)
        return float(np.dot(weights, self.block_variances.imag) / np.pi)

    def to_dict(self) -> dict:
        def pair(value: complex) -> list[float]:
            return [float(value.real), float(value.imag)]

        return {
            "lambda": float(self.point.lambda_),
            "epsilon": float(self.point.epsilon),
            "residual": float(self.residual),
            "iterations": int(self.iterations),
            "messages": [[pair(v) for v in row] for row in self.messages],
            "block_variances": [pair(v) for v in self.block_variances],
        }


@dataclass
class InstanceCavitySolution:
    """Converged per-instance cavity state: one message per directed edge"""

    point: SpectralPoint
    variances: np.ndarray
    messages: np.ndarray
    residual: float
    iterations: int

    def block_means(self, labels: np.ndarray, m: int) -> np.ndarray:
        """Mean vertex variance per block"""
        counts = np.bincount(labels, minlength=m)
        real = np.bincount(labels, weights=self.variances.real, minlength=m)
        imag = np.bincount(labels, weights=self.variances.imag, minlength=m)
        return (real + 1j * imag) / np.maximum(counts, 1)


def _contraction_rate(residuals: list[float]) -> float:
    """Geometric-mean ratio of successive defects; inf when it cannot be estimated"""
    if len(residuals) < 2 or residuals[0] <= 0:
        return np.inf
    return (residuals[-1] / residuals[0]) ** (1.0 / (len(residuals) - 1))


def _iterate(
    update: Callable[[np.ndarray], np.ndarray],
    initial: np.ndarray,
    params: SolverParams,
    lambda_: float,
) -> tuple[np.ndarray, float, int]:
    """
    Damped fixed-point loop: state <- damping*F(state) + (1-damping)*state.

    The defect r = max|F(state) - state| alone does not bound the distance to
    the fixed point when the map contracts slowly. The contraction rate q is
    estimated from recent defects; convergence needs r <= tol and also
    r*q/(1-q) <= tol. A defect at rounding level counts as converged.
    The returned state is F(state) at the stopping step.
    """
    state = initial
    residual = np.inf
    history: deque[float] = deque(maxlen=RATE_WINDOW)
    for iteration in range(1, params.max_iter + 1):
        updated = update(state)
        residual = float(np.max(np.abs(updated - state))) if state.size else 0.0
        if not np.isfinite(residual):
            break
        if residual <= params.tol:
            scale = max(1.0, float(np.max(np.abs(updated)))) if updated.size else 1.0
            if residual <= ROUNDING_FLOOR * scale:
                return updated, residual, iteration
            rate = _contraction_rate([*history, residual])
            if rate < 1.0 and residual * rate / (1.0 - rate) <= params.tol:
                return updated, residual, iteration
        history.append(residual)
        state = params.damping * updated + (1.0 - params.damping) * state
    raise CavityConvergenceError(
        f"Cavity iteration did not converge at lambda={lambda_}: residual {residual:.3e} "
        f"after {params.max_iter} iterations",
        residual=residual,
        iterations=params.max_iter,
        lambda_=lambda_,
    )


def _reduced_weights(c: np.ndarray) -> np.ndarray:
    """W[a, b, d] = max(c_ad - delta_bd, 0): neighbors left to a block-a vertex once its block-b neighbor is removed"""
    m = c.shape[0]
    eye = np.eye(m, dtype=np.int64)
    return np.maximum(c[:, None, :] - eye[None, :, :], 0).astype(np.float64)


def _newton_polish(
    update: Callable[[np.ndarray], np.ndarray],
    weights: np.ndarray,
    messages: np.ndarray,
    residual: float,
) -> tuple[np.ndarray, float]:
    """
    Refine a converged block solution with Newton steps on F(M) - M.

    With F[a, b] = 1 / (z - sum_d W[a, b, d] M[d, a]) the Jacobian is
    dF[a, b] / dM[d, a] = F[a, b]^2 W[a, b, d]. Refined messages replace the
    input only when they lower the defect and stay in the upper half plane.
    """
    m = messages.shape[0]
    if m == 0:
        return messages, residual
    index = np.arange(m)
    best, best_residual = messages, residual
    current = messages
    for _ in range(NEWTON_STEPS):
        mapped = update(current)
        jacobian = np.zeros((m, m, m, m), dtype=np.complex128)
        jacobian[index[:, None, None], index[None, :, None], index[None, None, :], index[:, None, None]] = (
            mapped[:, :, None] ** 2 * weights
        )
        system = np.eye(m * m) - jacobian.reshape(m * m, m * m)
        try:
            step = np.linalg.solve(system, (mapped - current).reshape(-1))
        except np.linalg.LinAlgError:
            break
        current = current + step.reshape(m, m)
        refined = update(current)
        defect = float(np.max(np.abs(refined - current)))
        if not np.isfinite(defect):
            break
        if defect <= best_residual and np.all(refined.imag > 0):
            best, best_residual = refined, defect
    return best, best_residual


def solve_block_cavity(
    model: BlockModel,
    point: SpectralPoint,
    params: SolverParams | None = None,
    initial: np.ndarray | None = None,
) -> CavitySolution:
    """
    Solve the block-reduced cavity equations.

    Fixed point of D_a^(b) = 1 / (z - sum_d max(c_ad - delta_bd, 0) D_d^(a)),
    followed by the block variances D_a = 1 / (z - sum_d c_ad D_d^(a)).

    Args:
        model: Block model (the equations only use its connectivity)
        point: Spectral point
        params: Solver controls (defaults from config)
        initial: Warm-start messages, m x m complex

    Returns:
        CavitySolution

    Raises:
        CavityConvergenceError: If max_iter is exceeded
    """
    params = params or SolverParams()
    c = model.connectivity.entries.astype(np.float64)
    m = c.shape[0]
    weights = _reduced_weights(model.connectivity.entries)
    z = point.z

    def update(messages: np.ndarray) -> np.ndarray:
        # messages[d, a] is D_d^(a)
        field_sum = np.einsum("abd,da->ab", weights, messages)
        return 1.0 / (z - field_sum)

    start = np.full((m, m), INITIAL_MESSAGE, dtype=np.complex128) if initial is None else np.array(initial, dtype=np.complex128)
    messages, residual, iterations = _iterate(update, start, params, point.lambda_)
    messages, residual = _newton_polish(update, weights, messages, residual)
    block_variances = 1.0 / (z - np.sum(c * messages.T, axis=1))

    logger.debug(f"Block cavity at lambda={point.lambda_}: {iterations} iterations, residual {residual:.2e}")
    return CavitySolution(
        point=point,
        messages=messages,
        block_variances=block_variances,
        residual=residual,
        iterations=iterations,
    )


def solve_instance_cavity(
    graph: Graph,
    point: SpectralPoint,
    params: SolverParams | None = None,
) -> InstanceCavitySolution:
    """
    Solve the cavity equations on a concrete graph.

    Directed edge e = (i -> j) carries D_i^(j) = 1 / (z - sum_{l in N(i) minus j} D_l^(i));
    vertex variances are D_i = 1 / (z - sum_{l in N(i)} D_l^(i)).

    Raises:
        ValueError: If the graph is not simple
        CavityConvergenceError: If max_iter is exceeded
    """
    params = params or SolverParams()
    if not graph.is_simple():
        raise ValueError("Instance cavity equations need a simple graph")

    z = point.z
    n_edges = graph.num_edges
    source = np.concatenate([graph.edges[:, 0], graph.edges[:, 1]])
    target = np.concatenate([graph.edges[:, 1], graph.edges[:, 0]])
    reverse = np.concatenate([np.arange(n_edges, 2 * n_edges), np.arange(n_edges)])
    # incoming[i, e] = 1 when directed edge e points into i
    incoming = sparse.csr_matrix(
        (np.ones(2 * n_edges), (target, np.arange(2 * n_edges))),
        shape=(graph.n, 2 * n_edges),
    )

    def update(messages: np.ndarray) -> np.ndarray:
        totals = incoming @ messages
        return 1.0 / (z - (totals[source] - messages[reverse]))

    start = np.full(2 * n_edges, INITIAL_MESSAGE, dtype=np.complex128)
    messages, residual, iterations = _iterate(update, start, params, point.lambda_)
    variances = 1.0 / (z - incoming @ messages)

    logger.debug(f"Instance cavity at lambda={point.lambda_}: {iterations} iterations on {2 * n_edges} messages")
    return InstanceCavitySolution(
        point=point,
        variances=np.asarray(variances, dtype=np.complex128),
        messages=messages,
        residual=residual,
        iterations=iterations,
    )


def dump_cavity_solution(solution: CavitySolution, path: Path) -> Path:
    """Write a debug dump of a block cavity solution (complex values as [re, im])"""
    path.write_text(yaml.safe_dump(solution.to_dict(), sort_keys=False), encoding="utf-8")
    return path
