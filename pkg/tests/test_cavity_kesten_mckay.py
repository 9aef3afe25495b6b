"""
Tests for the closed-form regular-graph spectral law
"""
import math

import numpy as np
import pytest
from scipy.integrate import quad

from src.cavity.kesten_mckay import DomainError, kesten_mckay, kesten_mckay_resolvent


def test_value_at_zero():
    """Test the density at the band centre for c=3"""
    expected = 3 * math.sqrt(8) / (2 * math.pi * 9)
    assert kesten_mckay(3, 0.0) == pytest.approx(expected, rel=1e-12)


def test_zero_outside_band():
    """Test the density vanishes beyond 2 sqrt(c-1)"""
    assert kesten_mckay(3, 3.0) == 0.0
    assert kesten_mckay(3, -2.9) == 0.0
    assert kesten_mckay(9, 6.0) == 0.0


def test_array_input():
    """Test vectorized evaluation is symmetric in lambda"""
    grid = np.linspace(-3, 3, 61)
    rho = kesten_mckay(4, grid)
    assert isinstance(rho, np.ndarray)
    assert rho.shape == grid.shape
    assert np.allclose(rho, rho[::-1])
    assert np.all(rho >= 0)


@pytest.mark.parametrize("c", [3, 4, 9, 20])
def test_normalized(c):
    """Test the density integrates to one"""
    edge = 2 * math.sqrt(c - 1)
    mass, _ = quad(lambda x: kesten_mckay(c, x), -edge, edge, limit=200)
    assert mass == pytest.approx(1.0, abs=1e-6)


def test_domain_error():
    """Test c < 2 is outside the law's domain"""
    with pytest.raises(DomainError):
        kesten_mckay(1, 0.0)
    assert issubclass(DomainError, ValueError)


def test_resolvent_matches_density():
    """Test Im of the tree resolvent reproduces the density for small epsilon"""
    for lam in (-2.0, -0.5, 0.0, 1.3, 2.5):
        z = complex(lam, -1e-9)
        assert kesten_mckay_resolvent(3, z).imag / math.pi == pytest.approx(kesten_mckay(3, lam), abs=1e-6)


def test_resolvent_outside_band_is_real():
    """Test the resolvent has no imaginary part outside the band"""
    value = kesten_mckay_resolvent(3, complex(3.5, -1e-12))
    assert abs(value.imag) < 1e-9
