"""
Tests for partition overlap
"""
import numpy as np
import pytest

from src.ensemble.models import Partition
from src.ensemble.validation import DimensionMismatchError
from src.partition.scoring import NoGroundTruthError, overlap


def test_exact_and_swapped():
    """Test exact recovery scores 1 under either labelling"""
    truth = Partition([0, 0, 1, 1])
    assert overlap(truth, truth) == 1.0
    assert overlap(truth.swapped(), truth) == 1.0


def test_half_agreement_scores_zero():
    """Test random-level agreement"""
    assert overlap([0, 1, 0, 1], [0, 0, 1, 1]) == 0.0


def test_partial_agreement():
    """Test 3 of 4 correct gives 0.5"""
    assert overlap(np.array([0, 0, 1, 0]), [0, 0, 1, 1]) == pytest.approx(0.5)
    assert overlap(np.array([1, 1, 0, 1]), [0, 0, 1, 1]) == pytest.approx(0.5)


def test_missing_truth():
    """Test scoring without labels"""
    with pytest.raises(NoGroundTruthError):
        overlap([0, 1], None)


def test_length_mismatch():
    """Test partitions of different sizes"""
    with pytest.raises(DimensionMismatchError):
        overlap([0, 1, 1], [0, 1])


def test_bad_labels_and_empty():
    """Test labels outside {0, 1} and empty inputs"""
    with pytest.raises(ValueError, match="outside"):
        overlap([0, 2], [0, 1])
    with pytest.raises(ValueError):
        overlap([], [])
