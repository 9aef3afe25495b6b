"""
Tests for the equitable graph sampler
"""
import numpy as np
import pytest

from src.ensemble.models import BlockModel, ConnectivityMatrix, modular_model
from src.ensemble.sampler import SamplerError, _repair, sample
from src.ensemble.validation import verify_equitable


def test_sample_is_equitable_and_simple(modular_c3_model):
    """Test the output satisfies the block-degree constraints"""
    graph = sample(modular_c3_model, seed=1)
    assert graph.n == 200
    assert graph.is_simple()
    assert graph.num_edges == modular_c3_model.expected_edges
    assert verify_equitable(graph, modular_c3_model)
    assert np.all(graph.degrees() == 3)


def test_sample_is_deterministic(modular_c3_model):
    """Test identical seeds give identical graphs"""
    a = sample(modular_c3_model, seed=42)
    b = sample(modular_c3_model, seed=42)
    assert np.array_equal(a.edges, b.edges)
    assert np.array_equal(a.labels, b.labels)


@pytest.mark.parametrize("seed_a, seed_b", [(1, 2), (0, 7), (42, 43), (123, 9999)])
def test_different_seeds_differ(modular_c3_model, seed_a, seed_b):
    """Test different seeds give different edge sets"""
    a = sample(modular_c3_model, seed=seed_a)
    b = sample(modular_c3_model, seed=seed_b)
    assert a.edge_set() != b.edge_set()


def test_sample_dense_blocks_need_repair():
    """Test high intra-block degrees are reached through swap repair"""
    model = modular_model(100, 16, 4)
    graph = sample(model, seed=5, max_attempts=5)
    assert graph.is_simple()
    assert verify_equitable(graph, model)


def test_sample_bipartite():
    """Test the disassortative two-block case"""
    model = modular_model(100, 0, 3)
    graph = sample(model, seed=0)
    labels = graph.labels
    assert np.all(labels[graph.edges[:, 0]] != labels[graph.edges[:, 1]])
    assert verify_equitable(graph, model)


def test_sample_unequal_blocks(unequal_model):
    """Test unequal sizes balanced by the connectivity"""
    for seed in range(5):
        assert verify_equitable(sample(unequal_model, seed=seed), unequal_model)


def test_sample_three_blocks():
    """Test a model with three blocks of different sizes"""
    model = BlockModel(
        sizes=(20, 40, 20),
        connectivity=ConnectivityMatrix.from_rows([[2, 2, 0], [1, 1, 1], [0, 2, 2]]),
    )
    graph = sample(model, seed=11)
    assert verify_equitable(graph, model)
    assert graph.is_simple()


def test_sample_empty_model():
    """Test zero connectivity yields an edgeless graph"""
    model = BlockModel(sizes=(5,), connectivity=ConnectivityMatrix.from_rows([[0]]))
    graph = sample(model, seed=0)
    assert graph.num_edges == 0
    assert graph.n == 5


def test_sample_shuffle_keeps_structure(modular_c3_model):
    """Test permuted vertex ids carry their labels along"""
    graph = sample(modular_c3_model, seed=9, shuffle=True)
    assert verify_equitable(graph, modular_c3_model)
    assert not np.array_equal(graph.labels, modular_c3_model.labels())


def test_sample_rejects_infeasible_model():
    """Test infeasible models are refused before sampling"""
    model = BlockModel(sizes=(5,), connectivity=ConnectivityMatrix.from_rows([[3]]))
    with pytest.raises(ValueError, match="parity"):
        sample(model, seed=0)


def test_sample_exhausted_budget():
    """Test a component that cannot be made simple within the budget"""
    model = BlockModel(sizes=(10,), connectivity=ConnectivityMatrix.from_rows([[9]]))
    with pytest.raises(SamplerError) as excinfo:
        sample(model, seed=0, max_attempts=1, swap_factor=0)
    assert excinfo.value.component == "block 1"
    assert excinfo.value.violations > 0


def test_repair_preserves_degrees():
    """Test double-edge swaps keep every degree"""
    rng = np.random.default_rng(0)
    stubs = np.repeat(np.arange(30), 4)
    pairs = rng.permutation(stubs).reshape(-1, 2)
    repaired = _repair(pairs, rng, bipartite=False, max_swaps=10_000)
    assert np.array_equal(np.bincount(repaired.ravel(), minlength=30), np.full(30, 4))
    assert np.all(repaired[:, 0] != repaired[:, 1])
    keys = {tuple(sorted(p)) for p in repaired.tolist()}
    assert len(keys) == len(repaired)
