"""
Tests for bulk edges and the critical line
"""
import math

import pytest

from src.cavity.kesten_mckay import DomainError
from src.spectrum.thresholds import (
    bisection_detectable,
    bulk_edge,
    community_eigenvalue,
    critical_ratio,
    modular_split,
)


@pytest.mark.parametrize("c, expected", [(2, 2.0), (3, 2.828427), (9, 5.656854)])
def test_bulk_edge(c, expected):
    """Test 2 sqrt(c-1)"""
    assert bulk_edge(c) == pytest.approx(expected, abs=1e-6)


def test_bulk_edge_domain():
    """Test c < 2 is refused"""
    with pytest.raises(DomainError):
        bulk_edge(1)


@pytest.mark.parametrize("c, expected", [(9, 4.38413), (20, 2.54541)])
def test_critical_ratio(c, expected):
    """Test r_c = (c + 2 sqrt(c-1)) / (c - 2 sqrt(c-1))"""
    assert critical_ratio(c) == pytest.approx(expected, abs=1e-5)


@pytest.mark.parametrize("c", [3, 5, 9, 20, 50])
def test_critical_ratio_identity(c):
    """Test the community eigenvalue meets the bulk edge on the critical line"""
    r_c = critical_ratio(c)
    c_out = c / (1 + r_c)
    assert c_out * (r_c - 1) == pytest.approx(2 * math.sqrt(c - 1), rel=1e-12)


@pytest.mark.parametrize("c", [1, 2])
def test_critical_ratio_domain(c):
    """Test the line is undefined where c - 2 sqrt(c-1) <= 0"""
    with pytest.raises(DomainError):
        critical_ratio(c)


def test_community_eigenvalue():
    """Test c_in - c_out"""
    assert community_eigenvalue(16, 4) == 12
    assert community_eigenvalue(1, 2) == -1


def test_bisection_detectable():
    """Test the community eigenvalue leaves the bulk only above the line"""
    assert bisection_detectable(16, 4)
    assert not bisection_detectable(6, 3)
    assert not bisection_detectable(2, 1)
    assert not bisection_detectable(1, 2)
    assert bisection_detectable(0, 3)
    assert not bisection_detectable(0, 1)


def test_modular_split():
    """Test integral (c_in, c_out) for a ratio"""
    assert modular_split(9, 2) == (6, 3)
    assert modular_split(3, 0.5) == (1, 2)
    assert modular_split(4, 1) == (2, 2)
    assert modular_split(3, 0) == (0, 3)
    assert modular_split(9, 1) is None
    with pytest.raises(DomainError):
        modular_split(9, -1)
