"""
Inverse participation ratio of eigenvectors
"""
import csv
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.cavity.density import format_float
from src.spectrum.eigen import EigenSystem


logger = logging.getLogger(__name__)


class NormError(ValueError):
    """Raised when an IPR is requested for a vector that is not unit norm"""

    def __init__(self, norm: float):
        super().__init__(f"IPR needs a unit vector, got norm {norm:.12g}")
        self.norm = norm


def ipr(vector, tol: float = 1e-10) -> float:
    """
    Sum of fourth powers of a unit vector.

    Equals 1/n for a vector spread evenly over n components and 1 for a
    basis vector.

    Raises:
        NormError: If | ||v|| - 1 | > tol
    """
    v = np.asarray(vector, dtype=np.float64)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tol:
        raise NormError(norm)
    return float(np.sum(v**4))


def ipr_values(eigs: EigenSystem) -> np.ndarray:
    """IPR of every eigenvector column, in eigenvalue order"""
    return np.sum(eigs.eigenvectors**4, axis=0)


@dataclass
class IprTable:
    eigenvalues: np.ndarray
    iprs: np.ndarray

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    def records(self) -> list[tuple[float, float]]:
        return [(float(lam), float(value)) for lam, value in zip(self.eigenvalues, self.iprs)]

    def to_csv(self, path: Path) -> Path:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=["lambda", "ipr"], lineterminator="\n")
            writer.writeheader()
            for lam, value in self.records():
                writer.writerow({"lambda": format_float(lam), "ipr": format_float(value)})
        return path


def ipr_table(eigs: EigenSystem) -> IprTable:
    iprs = ipr_values(eigs)
    logger.debug(f"IPR table over {eigs.n} eigenvectors, median {float(np.median(iprs)):.3e}")
    return IprTable(eigenvalues=eigs.eigenvalues.copy(), iprs=iprs)
