"""
Tests for ensemble data models
"""
import numpy as np
import pytest

from src.ensemble.models import BlockModel, ConnectivityMatrix, Graph, Partition, modular_model


def test_connectivity_matrix_rejects_non_square():
    """Test non-square matrices are refused"""
    with pytest.raises(ValueError, match="square"):
        ConnectivityMatrix(np.zeros((2, 3)))


def test_connectivity_matrix_is_read_only():
    """Test entries cannot be mutated after construction"""
    c = ConnectivityMatrix.from_rows([[2, 1], [1, 2]])
    with pytest.raises(ValueError):
        c.entries[0, 0] = 5


def test_connectivity_matrix_equality_and_hash():
    """Test value equality on entries"""
    a = ConnectivityMatrix.from_rows([[2, 1], [1, 2]])
    b = ConnectivityMatrix.from_rows([[2, 1], [1, 2]])
    assert a == b
    assert hash(a) == hash(b)
    assert a != ConnectivityMatrix.from_rows([[1, 2], [2, 1]])


def test_block_model_properties(unequal_model):
    """Test derived sizes, offsets and degrees"""
    assert unequal_model.m == 2
    assert unequal_model.n == 60
    assert unequal_model.offsets.tolist() == [0, 40]
    assert not unequal_model.has_equal_sizes
    assert unequal_model.is_regular
    assert unequal_model.degree == 3
    assert unequal_model.expected_edges == 90
    assert unequal_model.labels().tolist() == [0] * 40 + [1] * 20


def test_modular_model():
    """Test the two-block shorthand"""
    model = modular_model(100, 16, 4)
    assert model.sizes == (50, 50)
    assert model.connectivity.to_rows() == [[16, 4], [4, 16]]


def test_modular_model_odd_n():
    """Test odd sizes cannot be split evenly"""
    with pytest.raises(ValueError, match="even"):
        modular_model(101, 2, 1)


def test_with_size():
    """Test resizing keeps the connectivity"""
    model = modular_model(100, 2, 1).with_size(40)
    assert model.sizes == (20, 20)
    with pytest.raises(ValueError):
        modular_model(100, 2, 1).with_size(41)


def test_graph_canonical_edges():
    """Test edges are stored once with u < v, sorted"""
    graph = Graph(n=4, edges=[(3, 1), (0, 2), (1, 0)])
    assert graph.edges.tolist() == [[0, 1], [0, 2], [1, 3]]
    assert graph.num_edges == 3
    assert graph.degrees().tolist() == [2, 2, 1, 1]


def test_graph_simple_detection():
    """Test loops and repeated edges are not simple"""
    assert Graph(n=3, edges=[(0, 1), (1, 2)]).is_simple()
    assert not Graph(n=3, edges=[(0, 1), (1, 0)]).is_simple()
    assert not Graph(n=3, edges=[(1, 1)]).is_simple()


def test_graph_adjacency_symmetric():
    """Test dense and sparse adjacency agree and are symmetric"""
    graph = Graph(n=4, edges=[(0, 1), (1, 2), (2, 3)])
    dense = graph.adjacency()
    assert np.array_equal(dense, dense.T)
    assert np.array_equal(dense, graph.adjacency_sparse().toarray())
    assert dense.sum() == 6


def test_graph_block_degrees():
    """Test per-block neighbor counts"""
    graph = Graph(n=4, edges=[(0, 1), (0, 2), (1, 3)], labels=[0, 0, 1, 1])
    assert graph.block_degrees(2).tolist() == [[1, 1], [1, 1], [1, 0], [1, 0]]


def test_graph_block_degrees_requires_labels():
    """Test block degrees need labels"""
    with pytest.raises(ValueError):
        Graph(n=2, edges=[(0, 1)]).block_degrees(1)


def test_graph_connectivity():
    """Test connected components detection"""
    assert Graph(n=3, edges=[(0, 1), (1, 2)]).is_connected()
    assert not Graph(n=4, edges=[(0, 1), (2, 3)]).is_connected()


def test_graph_without_edge():
    """Test removing one edge keeps labels"""
    graph = Graph(n=3, edges=[(0, 1), (1, 2)], labels=[0, 0, 1])
    smaller = graph.without_edge(2, 1)
    assert smaller.edges.tolist() == [[0, 1]]
    assert smaller.labels.tolist() == [0, 0, 1]


def test_partition_swapped():
    """Test label exchange"""
    partition = Partition([0, 1, 1, 0])
    assert partition.swapped().assignment.tolist() == [1, 0, 0, 1]
    assert partition.num_labels == 2
    assert len(partition) == 4
