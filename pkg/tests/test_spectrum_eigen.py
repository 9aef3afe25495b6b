"""
Tests for dense eigendecomposition
"""
import numpy as np
import pytest

from src.ensemble.models import Graph, modular_model
from src.ensemble.sampler import sample
from src.spectrum.eigen import EigenResourceError, EigenSystem, canonicalize_signs, eigendecompose


def test_regular_graph_top_eigenvalue(three_regular_model):
    """Test the Perron eigenvalue of a 3-regular graph is 3"""
    eigs = eigendecompose(sample(three_regular_model, seed=0))
    assert eigs.eigenvalues[-1] == pytest.approx(3.0, abs=1e-8)


def test_modular_eigenvalues_include_block_eigenvalues():
    """Test c_in + c_out and c_in - c_out are exact eigenvalues"""
    eigs = eigendecompose(sample(modular_model(100, 16, 4), seed=1))
    assert np.min(np.abs(eigs.eigenvalues - 20)) < 1e-8
    assert np.min(np.abs(eigs.eigenvalues - 12)) < 1e-8


def test_empty_graph_spectrum():
    """Test the edgeless graph has only zero eigenvalues"""
    eigs = eigendecompose(Graph(n=5, edges=[]))
    assert np.allclose(eigs.eigenvalues, 0.0)
    assert eigs.n == 5


def test_eigensystem_invariants(modular_c3_graph):
    """Test ascending order, orthonormality and small residuals"""
    eigs = eigendecompose(modular_c3_graph)
    values, vectors = eigs.eigenvalues, eigs.eigenvectors
    assert np.all(np.diff(values) >= 0)
    gram = vectors.T @ vectors
    assert np.max(np.abs(gram - np.eye(eigs.n))) <= 1e-8
    assert np.allclose(np.linalg.norm(vectors, axis=0), 1.0, atol=1e-10)
    assert eigs.residual_bound <= 1e-8 * eigs.n * np.max(np.abs(values))
    adjacency = modular_c3_graph.adjacency()
    k = eigs.n // 2
    assert np.linalg.norm(adjacency @ eigs.vector(k) - values[k] * eigs.vector(k)) <= 1e-8 * eigs.n * 3


def test_eigendecompose_deterministic(modular_c3_graph):
    """Test repeated runs give identical vectors"""
    a = eigendecompose(modular_c3_graph)
    b = eigendecompose(modular_c3_graph)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_size_cap():
    """Test graphs above the cap raise a resource error"""
    with pytest.raises(EigenResourceError) as excinfo:
        eigendecompose(Graph(n=5, edges=[]), max_n=4)
    assert excinfo.value.n == 5
    assert excinfo.value.cap == 4


def test_size_cap_from_config(monkeypatch):
    """Test the default cap is MAX_EIGEN_N"""
    from src.config import Config
    monkeypatch.setattr(Config, "MAX_EIGEN_N", 3)
    with pytest.raises(EigenResourceError):
        eigendecompose(Graph(n=4, edges=[]))


def test_no_vertices():
    """Test an empty vertex set is refused"""
    with pytest.raises(ValueError):
        eigendecompose(Graph(n=0, edges=[]))


def test_canonicalize_signs():
    """Test each column's largest-magnitude entry becomes positive"""
    vectors = np.array([[0.6, 0.1], [-0.8, -0.9]])
    fixed = canonicalize_signs(vectors)
    assert fixed[:, 0].tolist() == [-0.6, 0.8]
    assert fixed[:, 1].tolist() == [-0.1, 0.9]


def test_eigen_system_vector_accessor():
    """Test vector(k) is the k-th column"""
    eigs = EigenSystem(eigenvalues=np.array([-1.0, 1.0]), eigenvectors=np.eye(2))
    assert eigs.vector(1).tolist() == [0.0, 1.0]
