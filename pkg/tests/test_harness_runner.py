"""
Tests for batch cell execution and CSV output
"""
from unittest.mock import MagicMock

import numpy as np
import pytest

from src.cavity.solver import CavityConvergenceError
from src.ensemble.sampler import SamplerError
from src.harness.output import write_csv
from src.harness.runner import (
    EXIT_CAVITY,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_SAMPLER,
    Cell,
    CellCache,
    exit_code_for,
    run_cells,
)
from src.logging.context import RunLogContext


@pytest.fixture
def context():
    return RunLogContext(kind="iprScatter", config_echo={})


def _cells(count):
    return [Cell(key=f"seed={seed:02d}", seed=seed) for seed in range(count)]


@pytest.mark.parametrize("workers", [1, 4])
def test_results_in_cell_order(context, workers):
    """Test results keep the declared order whatever the worker count"""
    outcome = run_cells(_cells(12), lambda cell: {"value": cell.seed * 2}, context, workers=workers)
    assert list(outcome.results) == [f"seed={seed:02d}" for seed in range(12)]
    assert [result["value"] for result in outcome.results.values()] == [seed * 2 for seed in range(12)]
    assert outcome.exit_code == EXIT_OK
    assert context.to_manifest().status_counts()["ok"] == 12


def test_failures_are_recorded(context):
    """Test a failing cell does not stop the batch"""
    def work(cell):
        if cell.seed == 1:
            raise SamplerError("stuck", component="block 1")
        return {"value": cell.seed}

    outcome = run_cells(_cells(3), work, context)
    assert list(outcome.results) == ["seed=00", "seed=02"]
    assert outcome.exit_code == EXIT_SAMPLER
    failed = [cell for cell in context.to_manifest().cells if cell.status == "failed"]
    assert failed[0].key == "seed=01"
    assert "SamplerError: stuck" in failed[0].detail


def test_exit_code_for():
    """Test failures map to exit codes"""
    assert exit_code_for(SamplerError("x")) == EXIT_SAMPLER
    assert exit_code_for(CavityConvergenceError("x", residual=1.0, iterations=10)) == EXIT_CAVITY
    assert exit_code_for(ValueError("x")) == EXIT_INVALID


def test_duplicate_keys(context):
    """Test cell keys must be unique"""
    with pytest.raises(ValueError, match="unique"):
        run_cells([Cell("a", 0), Cell("a", 1)], lambda cell: {}, context)


def test_resume_uses_cache(tmp_path, context):
    """Test cached cells are not recomputed on resume"""
    cache = CellCache(tmp_path / "cache")
    run_cells(_cells(2), lambda cell: {"eigenvalues": np.arange(3.0) + cell.seed}, context, cache=cache)
    assert cache.path("seed=00").exists()
    assert not list((tmp_path / "cache").glob("*.partial.npz"))

    work = MagicMock(return_value={"eigenvalues": np.zeros(3)})
    resumed = RunLogContext(kind="iprScatter", config_echo={})
    outcome = run_cells(_cells(3), work, resumed, cache=cache, resume=True)

    assert work.call_count == 1
    assert np.array_equal(outcome.results["seed=01"]["eigenvalues"], [1.0, 2.0, 3.0])
    assert resumed.to_manifest().status_counts() == {"ok": 1, "cached": 2, "failed": 0, "skipped": 0}


def test_cache_key_sanitized(tmp_path):
    """Test slashes in cell keys stay inside the cache directory"""
    cache = CellCache(tmp_path)
    assert cache.path("c=003/r=2/seed=0").parent == tmp_path
    assert cache.load("missing") is None


def test_write_csv_formatting(tmp_path):
    """Test number, flag and missing-value formatting"""
    path = write_csv(
        tmp_path / "out" / "rows.csv",
        ["a", "b", "c", "d"],
        [{"a": 1, "b": 0.1, "c": True, "d": None}, {"a": np.int64(2), "b": np.float64(1 / 3), "c": np.bool_(False)}],
    )
    assert path.read_text(encoding="utf-8") == "a,b,c,d\n1,0.1,true,\n2,0.333333333333,false,\n"


def test_write_csv_rejects_unknown_format(tmp_path):
    """Test only supported table formats are written"""
    path = tmp_path / "rows.json"
    with pytest.raises(ValueError, match="Unsupported output format 'json'"):
        write_csv(path, ["a"], [{"a": 1}], output_format="json")
    assert not path.exists()
