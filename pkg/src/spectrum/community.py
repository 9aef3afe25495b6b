"""
Block-symmetric eigenpairs of the connectivity matrix and their lift to graphs.

On an equitable graph, a vector constant on blocks is mapped by the
adjacency matrix to c applied to the block values, so every eigenpair of c
is an exact eigenpair of A.
"""
import numpy as np
from scipy import linalg

from src.ensemble.models import ConnectivityMatrix


def _canonical_sign(vector: np.ndarray) -> np.ndarray:
    nonzero = np.flatnonzero(np.abs(vector) > 1e-12)
    if nonzero.size and vector[nonzero[0]] < 0:
        return -vector
    return vector


def community_eigenpairs(connectivity: ConnectivityMatrix) -> list[tuple[float, np.ndarray]]:
    """
    Eigenpairs of the m x m connectivity matrix, eigenvalues descending.

    Non-symmetric matrices (unequal block sizes) are similar to a symmetric
    one, so their spectrum is real and the imaginary round-off is dropped.
    Vectors have unit norm with the first non-zero component positive.
    """
    entries = np.asarray(connectivity.entries, dtype=np.float64)
    if connectivity.is_symmetric():
        values, vectors = linalg.eigh(entries)
    else:
        values, vectors = linalg.eig(entries)
        values = values.real
        vectors = vectors.real

    order = np.argsort(-values, kind="stable")
    pairs = []
    for k in order:
        u = vectors[:, k] / np.linalg.norm(vectors[:, k])
        pairs.append((float(values[k]), _canonical_sign(u)))
    return pairs


def lift_community_vector(u, labels) -> np.ndarray:
    """Unit vector w_i = u_{g_i} / ||u_g|| over the vertices"""
    lifted = np.asarray(u, dtype=np.float64)[np.asarray(labels, dtype=np.int64)]
    norm = np.linalg.norm(lifted)
    if norm == 0:
        raise ValueError("Lifted community vector is zero")
    return lifted / norm


def lifted_residual(adjacency, eigenvalue: float, vector) -> float:
    """||A w - mu w||_2; adjacency may be dense or scipy sparse"""
    w = np.asarray(vector, dtype=np.float64)
    return float(np.linalg.norm(adjacency @ w - eigenvalue * w))
