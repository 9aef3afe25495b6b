"""
Tests for empirical spectral densities
"""
import math

import numpy as np
import pytest

from src.cavity.density import DensityCurve
from src.cavity.kesten_mckay import kesten_mckay
from src.ensemble.models import modular_model
from src.ensemble.sampler import sample
from src.spectrum.density import default_bin_width, empirical_density, histogram_l1_distance
from src.spectrum.eigen import EigenSystem, eigendecompose


def test_single_repeated_eigenvalue():
    """Test [0,0,0,0] gives one bin holding all the mass"""
    curve = empirical_density(np.zeros(4), bin_width=1.0)
    assert curve.lambdas.tolist() == [0.0]
    assert curve.rho.tolist() == [1.0]


def test_unit_area_and_centres():
    """Test normalization and bins centred on multiples of the width"""
    values = np.random.default_rng(1).normal(size=500)
    curve = empirical_density(values, bin_width=0.25)
    assert np.sum(curve.rho) * 0.25 == pytest.approx(1.0)
    assert np.allclose(curve.lambdas / 0.25, np.round(curve.lambdas / 0.25))


def test_support_extends_bins():
    """Test a fixed support widens the grid"""
    curve = empirical_density(np.array([0.0, 0.1]), bin_width=0.5, support=(-2.0, 2.0))
    assert curve.lambdas[0] == -2.0
    assert curve.lambdas[-1] == 2.0
    assert np.sum(curve.rho) * 0.5 == pytest.approx(1.0)


def test_accepts_eigensystem():
    """Test an EigenSystem is histogrammed by its eigenvalues"""
    eigs = EigenSystem(eigenvalues=np.array([-1.0, 1.0]), eigenvectors=np.eye(2))
    curve = empirical_density(eigs, bin_width=1.0)
    assert curve.lambdas.tolist() == [-1.0, 0.0, 1.0]
    assert curve.rho.tolist() == [0.5, 0.0, 0.5]


def test_invalid_inputs():
    """Test non-positive widths and empty inputs"""
    with pytest.raises(ValueError):
        empirical_density(np.zeros(3), bin_width=0.0)
    with pytest.raises(ValueError):
        empirical_density(np.array([]), bin_width=0.1)


def test_default_bin_width():
    """Test sixty bins across the bulk, 0.1 below c=2"""
    assert default_bin_width(3) == pytest.approx(4 * math.sqrt(2) / 60)
    assert default_bin_width(1) == 0.1
    assert default_bin_width(0) == 0.1


def test_l1_distance_exact_histogram():
    """Test a histogram equal to the bin averages has zero distance"""
    uniform = lambda x: 0.5 if abs(x) <= 1 else 0.0
    curve = DensityCurve(lambdas=np.array([-0.75, -0.25, 0.25, 0.75]), rho=np.full(4, 0.5))
    assert histogram_l1_distance(curve, uniform, 0.5) == pytest.approx(0.0, abs=1e-9)


def test_l1_distance_excludes_bins():
    """Test bins containing excluded points are skipped"""
    uniform = lambda x: 0.5 if abs(x) <= 1 else 0.0
    curve = DensityCurve(lambdas=np.array([-0.75, -0.25, 0.25, 0.75]), rho=np.array([0.5, 0.5, 1.0, 0.5]))
    assert histogram_l1_distance(curve, uniform, 0.5) == pytest.approx(0.25, abs=1e-9)
    assert histogram_l1_distance(curve, uniform, 0.5, exclude=[0.3]) == pytest.approx(0.0, abs=1e-9)


def test_pooled_histogram_close_to_kesten_mckay():
    """Test a small pooled sample already tracks the closed form"""
    values = np.concatenate([
        eigendecompose(sample(modular_model(1000, 2, 1), seed=seed)).eigenvalues for seed in range(20)
    ])
    width = default_bin_width(3)
    curve = empirical_density(values, width)
    distance = histogram_l1_distance(curve, lambda x: kesten_mckay(3, x), width, exclude=[3.0, 1.0])
    assert distance <= 0.12
