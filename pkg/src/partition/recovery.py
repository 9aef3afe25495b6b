"""
Two-community recovery from adjacency eigenvectors.

Naive bisection splits vertices by the sign of the eigenvector of the
second-largest eigenvalue, which only carries block information once the
community eigenvalue leaves the bulk. The IPR search drops the top
eigenvector and takes the most extended of the rest: the block-symmetric
community vector has IPR exactly 1/n, while bulk vectors sit near 3/n
wherever the community eigenvalue lies.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml
from scipy import linalg

from src.ensemble.models import Partition
from src.spectrum.eigen import EigenSystem, canonicalize_signs


logger = logging.getLogger(__name__)

METHOD_NAIVE = "naive"
METHOD_NAIVE_LOWEST = "naiveLowest"
METHOD_IPR = "iprSearch"
METHODS = (METHOD_NAIVE, METHOD_NAIVE_LOWEST, METHOD_IPR)

EIGENVALUE_TIE = 1e-10
IPR_TIE = 1e-12


@dataclass
class RecoveryResult:
    """
    Outcome of a recovery method.

    A result whose sign split produced a single label, or whose selected
    eigenvalue is numerically zero, is marked degenerate.
    """

    partition: Partition
    selected_eigenvalue: float
    selected_ipr: float
    method: str
    selected_index: int
    degenerate: bool = False
    warnings: list[str] = field(default_factory=list)

    def to_dict(self, overlap: float | None = None) -> dict:
        sizes = np.bincount(self.partition.assignment, minlength=2).tolist()
        data = {
            "method": self.method,
            "selected_eigenvalue": float(self.selected_eigenvalue),
            "selected_ipr": float(self.selected_ipr),
            "selected_index": int(self.selected_index),
            "block_sizes": sizes,
            "degenerate": self.degenerate,
            "warnings": list(self.warnings),
        }
        if overlap is not None:
            data["overlap"] = float(overlap)
        return data


def perron_resolved_vectors(eigs: EigenSystem) -> np.ndarray:
    """
    Eigenvectors with a degenerate top eigenspace rotated.

    When the largest eigenvalue is repeated (disconnected blocks) the solver
    returns an arbitrary basis of its eigenspace. The basis is rotated so its
    last column is the normalized projection of the constant vector and the
    others span the orthogonal complement inside the eigenspace, which keeps
    excluding the top-ranked column meaningful.
    """
    values = eigs.eigenvalues
    vectors = eigs.eigenvectors
    scale = max(float(np.max(np.abs(values))), 1.0)
    top = np.flatnonzero(values >= values[-1] - 1e-8 * scale)
    if top.size < 2:
        return vectors

    basis = vectors[:, top]
    ones = np.full(eigs.n, 1.0 / np.sqrt(eigs.n))
    coefficients = basis.T @ ones
    if np.linalg.norm(coefficients) < 1e-8:
        return vectors

    perron = basis @ (coefficients / np.linalg.norm(coefficients))
    complement = basis @ linalg.null_space(coefficients[np.newaxis, :])
    rotated = vectors.copy()
    rotated[:, top] = canonicalize_signs(np.column_stack([complement, perron]))
    logger.info(f"Top eigenvalue {values[-1]:.6g} has multiplicity {top.size}; rotated its eigenspace")
    return rotated


def _split_by_sign(vector: np.ndarray) -> Partition:
    return Partition(np.where(vector >= 0, 0, 1))


def _build_result(
    eigs: EigenSystem,
    vectors: np.ndarray,
    index: int,
    method: str,
    warnings: list[str],
) -> RecoveryResult:
    vector = vectors[:, index]
    eigenvalue = float(eigs.eigenvalues[index])
    partition = _split_by_sign(vector)
    degenerate = False

    if partition.num_labels < 2:
        warnings.append("sign split produced a single label")
        degenerate = True
    scale = max(float(np.max(np.abs(eigs.eigenvalues))), 1.0)
    if abs(eigenvalue) <= 1e-8 * scale:
        warnings.append("selected eigenvalue is zero; it carries no block information")
        degenerate = True

    for message in warnings:
        logger.warning(f"{method}: {message}")
    return RecoveryResult(
        partition=partition,
        selected_eigenvalue=eigenvalue,
        selected_ipr=float(np.sum(vector**4)),
        method=method,
        selected_index=index,
        degenerate=degenerate,
        warnings=warnings,
    )


def naive_bisection(eigs: EigenSystem, which: str = "second") -> RecoveryResult:
    """
    Standard spectral bisection.

    Args:
        eigs: Full eigensystem of the adjacency matrix
        which: "second" uses the second-largest eigenvalue; "lowest" uses the
            smallest one, the disassortative variant

    Returns:
        RecoveryResult; zero components go to the first block

    Raises:
        ValueError: If n < 2 or which is unknown
    """
    if eigs.n < 2:
        raise ValueError("Bisection needs at least two vertices")
    if which not in ("second", "lowest"):
        raise ValueError(f"Unknown eigenvector choice {which!r}")

    vectors = perron_resolved_vectors(eigs)
    values = eigs.eigenvalues
    warnings: list[str] = []
    if which == "second":
        index = eigs.n - 2
        if index >= 1 and abs(values[index] - values[index - 1]) < EIGENVALUE_TIE:
            warnings.append(f"second and third eigenvalues coincide at {values[index]:.6g}")
        method = METHOD_NAIVE
    else:
        index = 0
        if abs(values[1] - values[0]) < EIGENVALUE_TIE and eigs.n > 2:
            warnings.append(f"two lowest eigenvalues coincide at {values[0]:.6g}")
        method = METHOD_NAIVE_LOWEST

    return _build_result(eigs, vectors, index, method, warnings)


def ipr_recovery(eigs: EigenSystem) -> RecoveryResult:
    """
    Recover two blocks from the most extended non-Perron eigenvector.

    The top-ranked eigenvector is excluded. Among the rest the minimal IPR
    wins; IPRs within 1e-12 of the minimum are resolved in favour of the
    larger |eigenvalue| and reported as a warning.
    """
    if eigs.n < 2:
        raise ValueError("IPR recovery needs at least two vertices")

    vectors = perron_resolved_vectors(eigs)
    iprs = np.sum(vectors[:, :-1] ** 4, axis=0)
    warnings: list[str] = []

    candidates = np.flatnonzero(iprs <= iprs.min() + IPR_TIE)
    if candidates.size > 1:
        index = int(candidates[np.argmax(np.abs(eigs.eigenvalues[candidates]))])
        warnings.append(f"{candidates.size} eigenvectors share the minimal IPR {iprs.min():.6g}; kept the largest |eigenvalue|")
    else:
        index = int(candidates[0])

    return _build_result(eigs, vectors, index, METHOD_IPR, warnings)


def recover(eigs: EigenSystem, method: str = METHOD_IPR) -> RecoveryResult:
    """Dispatch on a method name: naive, naiveLowest or iprSearch"""
    if method == METHOD_NAIVE:
        return naive_bisection(eigs)
    if method == METHOD_NAIVE_LOWEST:
        return naive_bisection(eigs, which="lowest")
    if method == METHOD_IPR:
        return ipr_recovery(eigs)
    raise ValueError(f"Unknown recovery method {method!r}, expected one of {', '.join(METHODS)}")


def dump_recovery_result(result: RecoveryResult, path: Path, overlap: float | None = None) -> Path:
    path.write_text(yaml.safe_dump(result.to_dict(overlap), sort_keys=False), encoding="utf-8")
    return path
