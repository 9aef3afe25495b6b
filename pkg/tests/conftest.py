"""
Shared fixtures
"""
import pytest

from src.config import Config
from src.ensemble.models import BlockModel, ConnectivityMatrix, modular_model
from src.ensemble.sampler import sample


@pytest.fixture(autouse=True)
def output_dir(tmp_path, monkeypatch):
    """Keep every run's outputs, manifests and caches inside the test's tmp dir"""
    runs = tmp_path / "runs"
    monkeypatch.setattr(Config, "OUTPUT_DIR", runs)
    return runs


@pytest.fixture
def three_regular_model():
    return BlockModel(sizes=(40,), connectivity=ConnectivityMatrix.from_rows([[3]]))


@pytest.fixture
def modular_c3_model():
    """c_in=2, c_out=1: total degree 3, community eigenvalue 1 inside the bulk"""
    return modular_model(200, 2, 1)


@pytest.fixture
def unequal_model():
    """Unequal blocks balanced as 40*1 == 20*2"""
    return BlockModel(sizes=(40, 20), connectivity=ConnectivityMatrix.from_rows([[2, 1], [2, 1]]))


@pytest.fixture
def modular_c3_graph(modular_c3_model):
    return sample(modular_c3_model, seed=7)
