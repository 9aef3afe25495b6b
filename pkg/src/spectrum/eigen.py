"""
Dense symmetric eigendecomposition of adjacency matrices.

The full spectrum and all eigenvectors are needed for the IPR statistics,
so this uses LAPACK's symmetric driver (scipy.linalg.eigh) at O(n^3) cost
and O(n^2) memory; MAX_EIGEN_N caps the size.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from src.config import config
from src.ensemble.models import Graph


logger = logging.getLogger(__name__)


class EigenResourceError(Exception):
    """Raised when a graph is too large for dense eigendecomposition"""

    def __init__(self, n: int, cap: int):
        super().__init__(f"Graph with n={n} exceeds the dense eigensolver cap of {cap}")
        self.n = n
        self.cap = cap


@dataclass(eq=False)
class EigenSystem:
    """
    Eigenpairs of a symmetric matrix.

    eigenvalues ascend; eigenvectors[:, k] is the unit eigenvector of
    eigenvalues[k]. residual_bound is max_k ||A v_k - lambda_k v_k||.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_bound: float = 0.0

    @property
    def n(self) -> int:
        return int(self.eigenvalues.size)

    def vector(self, k: int) -> np.ndarray:
        return self.eigenvectors[:, k]


def canonicalize_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude component is positive"""
    if vectors.size == 0:
        return vectors
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eigendecompose(graph: Graph, max_n: int | None = None) -> EigenSystem:
    """
    Full spectrum of the adjacency matrix.

    Args:
        graph: Graph with n >= 1
        max_n: Size cap (default MAX_EIGEN_N)

    Returns:
        EigenSystem with ascending eigenvalues and sign-canonical eigenvectors

    Raises:
        ValueError: If the graph is empty of vertices
        EigenResourceError: If n exceeds the cap
    """
    cap = config.MAX_EIGEN_N if max_n is None else max_n
    if graph.n < 1:
        raise ValueError("Eigendecomposition needs at least one vertex")
    if graph.n > cap:
        raise EigenResourceError(graph.n, cap)

    adjacency = graph.adjacency()
    eigenvalues, eigenvectors = linalg.eigh(adjacency)
    eigenvectors = canonicalize_signs(eigenvectors)

    residuals = np.linalg.norm(adjacency @ eigenvectors - eigenvectors * eigenvalues, axis=0)
    residual_bound = float(residuals.max())
    scale = graph.n * max(float(np.max(np.abs(eigenvalues))), 1.0)
    if residual_bound > 1e-8 * scale:
        logger.warning(f"Eigen residual {residual_bound:.2e} exceeds 1e-8 * n * max|lambda| = {1e-8 * scale:.2e}")

    logger.debug(f"Eigendecomposition n={graph.n}: spectrum [{eigenvalues[0]:.4f}, {eigenvalues[-1]:.4f}]")
    return EigenSystem(eigenvalues=eigenvalues, eigenvectors=eigenvectors, residual_bound=residual_bound)
