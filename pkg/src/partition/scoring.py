"""
Overlap between a recovered and a planted two-block partition
"""
import numpy as np

from src.ensemble.models import Partition
from src.ensemble.validation import DimensionMismatchError


class NoGroundTruthError(ValueError):
    """Raised when an overlap is requested without planted labels"""


def _assignment(partition) -> np.ndarray:
    if isinstance(partition, Partition):
        return partition.assignment
    return np.asarray(partition, dtype=np.int64)


def overlap(found, truth) -> float:
    """
    Label-swap maximized agreement rescaled to [0, 1].

    overlap = 2 * max(agree, 1 - agree) - 1, where agree is the fraction of
    vertices with matching labels. Exact recovery scores 1; random guessing
    on equal blocks scores close to 0.

    Args:
        found: Recovered Partition or label array with labels in {0, 1}
        truth: Planted Partition or label array, or None

    Raises:
        NoGroundTruthError: If truth is None
        DimensionMismatchError: If lengths differ
        ValueError: If a label falls outside {0, 1}
    """
    if truth is None:
        raise NoGroundTruthError("No ground truth labels available for overlap")
    a, b = _assignment(found), _assignment(truth)
    if a.size != b.size:
        raise DimensionMismatchError(f"Partition lengths differ: {a.size} vs {b.size}")
    if a.size == 0:
        raise ValueError("Cannot score empty partitions")
    for name, labels in (("found", a), ("truth", b)):
        if np.any((labels != 0) & (labels != 1)):
            raise ValueError(f"{name} partition has labels outside {{0, 1}}")

    agree = float(np.mean(a == b))
    return 2.0 * max(agree, 1.0 - agree) - 1.0
