"""
Tests for model documents and edge-list files
"""
from pathlib import Path

import numpy as np
import pytest

from src.ensemble.io import (
    ModelFileError,
    dump_model,
    format_edge_list,
    load_model,
    parse_model,
    read_edge_list,
    write_edge_list,
)
from src.ensemble.models import Graph
from src.ensemble.validation import validate_model


def test_parse_explicit_model():
    """Test sizes + connectivity documents"""
    model = parse_model({"sizes": [40, 20], "connectivity": [[2, 1], [2, 1]]})
    assert model.sizes == (40, 20)
    assert model.connectivity.to_rows() == [[2, 1], [2, 1]]


def test_parse_shorthand_model():
    """Test the n/c_in/c_out shorthand"""
    model = parse_model({"n": 1000, "c_in": 16, "c_out": 4})
    assert model.sizes == (500, 500)
    assert model.connectivity.to_rows() == [[16, 4], [4, 16]]


@pytest.mark.parametrize("document", [
    {"sizes": [10]},
    {"n": 10, "c_in": 2},
    {"sizes": [10], "connectivity": [[2]], "c_in": 1, "c_out": 1, "n": 10},
    {},
    {"n": 10, "c_in": -1, "c_out": 1},
])
def test_parse_invalid_documents(document):
    """Test malformed documents raise ModelFileError"""
    with pytest.raises(ModelFileError):
        parse_model(document)


def test_load_and_dump_model(tmp_path):
    """Test YAML model files"""
    path = tmp_path / "model.yaml"
    path.write_text("sizes: [4, 4]\nconnectivity:\n  - [1, 2]\n  - [2, 1]\n", encoding="utf-8")
    model = load_model(path)
    assert model.sizes == (4, 4)

    copy = dump_model(model, tmp_path / "copy.yaml")
    assert load_model(copy) == model


def test_load_model_errors(tmp_path):
    """Test unreadable and non-mapping files"""
    with pytest.raises(ModelFileError, match="Cannot read"):
        load_model(tmp_path / "missing.yaml")
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ModelFileError, match="mapping"):
        load_model(path)


def test_format_edge_list_header_and_labels():
    """Test header line, 1-based labels and 0-based edges"""
    graph = Graph(n=3, edges=[(0, 1), (1, 2)], labels=[0, 1, 1])
    text = format_edge_list(graph, m=2)
    assert text.splitlines() == ["# n=3 m=2", "# labels=1,2,2", "0 1", "1 2"]


def test_edge_list_file(tmp_path, modular_c3_graph):
    """Test reading back a written edge list"""
    path = write_edge_list(modular_c3_graph, tmp_path / "g.txt", m=2)
    graph, m = read_edge_list(path)
    assert m == 2
    assert graph.n == modular_c3_graph.n
    assert np.array_equal(graph.edges, modular_c3_graph.edges)
    assert np.array_equal(graph.labels, modular_c3_graph.labels)


def test_read_edge_list_without_labels(tmp_path):
    """Test files without a labels line have no labels"""
    path = tmp_path / "g.txt"
    path.write_text("# n=3 m=1\n0 1\n1 2\n", encoding="utf-8")
    graph, m = read_edge_list(path)
    assert graph.labels is None
    assert graph.num_edges == 2


@pytest.mark.parametrize("content, message", [
    ("0 1\n", "header"),
    ("# n=3 m=1\n0 1 2\n", "expected"),
    ("# n=3 m=1\n0 5\n", "out of range"),
    ("# n=3 m=1\n# labels=1,x,1\n", "labels"),
    ("# n=3 m=1\n# labels=1,1\n", "labels"),
])
def test_read_edge_list_errors(tmp_path, content, message):
    """Test malformed edge lists raise ModelFileError"""
    path = tmp_path / "bad.txt"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ModelFileError, match=message):
        read_edge_list(path)


def test_shipped_models_are_feasible():
    """Test every document under data/models loads and passes validation"""
    documents = sorted((Path(__file__).parent.parent / "data" / "models").glob("*.yaml"))
    assert documents
    for path in documents:
        assert validate_model(load_model(path)) == []
