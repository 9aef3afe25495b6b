"""
Batch execution of independent (model, seed) cells.

Cells run sequentially or on a thread pool; results come back in cell
order regardless of completion order. Each finished cell is stored as an
.npz file so an interrupted run can be resumed.
"""
import logging
import os
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from src.cavity.solver import CavityConvergenceError
from src.ensemble.sampler import SamplerError
from src.logging.context import RunLogContext
from src.spectrum.eigen import EigenResourceError


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DEGENERATE = 1
EXIT_INVALID = 2
EXIT_SAMPLER = 3
EXIT_CAVITY = 4

CELL_ERRORS = (SamplerError, CavityConvergenceError, EigenResourceError, ValueError)


def exit_code_for(error: Exception) -> int:
    """CLI exit code of a failure"""
    if isinstance(error, SamplerError):
        return EXIT_SAMPLER
    if isinstance(error, CavityConvergenceError):
        return EXIT_CAVITY
    return EXIT_INVALID


@dataclass(frozen=True)
class Cell:
    """One unit of batch work"""

    key: str
    seed: int
    params: dict = field(default_factory=dict, hash=False)


class CellCache:
    """Per-run directory of finished cell results"""

    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def path(self, key: str) -> Path:
        return self.directory / (re.sub(r"[^A-Za-z0-9_.=-]+", "_", key) + ".npz")

    def load(self, key: str) -> dict[str, np.ndarray] | None:
        path = self.path(key)
        if not path.exists():
            return None
        try:
            with np.load(path) as data:
                return {name: data[name] for name in data.files}
        except (OSError, ValueError) as e:
            logger.warning(f"Ignoring unreadable cache entry {path}: {e}")
            return None

    def store(self, key: str, result: dict):
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(key)
        partial = path.with_name(path.stem + ".partial.npz")
        np.savez(partial, **{name: np.asarray(value) for name, value in result.items()})
        os.replace(partial, path)


@dataclass
class BatchOutcome:
    """Successful results in cell order, plus the failures"""

    results: dict[str, dict] = field(default_factory=dict)
    failures: list[tuple[Cell, Exception]] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if not self.failures:
            return EXIT_OK
        return exit_code_for(self.failures[0][1])


def run_cells(
    cells: list[Cell],
    work: Callable[[Cell], dict],
    context: RunLogContext,
    workers: int = 1,
    cache: CellCache | None = None,
    resume: bool = False,
) -> BatchOutcome:
    """
    Run every cell and record its terminal status.

    Args:
        cells: Cells in output order; keys must be unique
        work: Maps a cell to a dict of arrays or scalars
        context: Run context receiving one record per cell
        workers: Thread count; 1 runs inline
        cache: Where finished cells are stored
        resume: Reuse cached results instead of recomputing

    Returns:
        BatchOutcome
    """
    keys = [cell.key for cell in cells]
    if len(set(keys)) != len(keys):
        raise ValueError("cell keys must be unique")

    def run_one(cell: Cell):
        if resume and cache is not None:
            cached = cache.load(cell.key)
            if cached is not None:
                context.record_cell(cell.key, cell.seed, "cached")
                return cell, cached, None

        start = time.time()
        try:
            result = work(cell)
        except CELL_ERRORS as e:
            duration_ms = int((time.time() - start) * 1000)
            logger.error(f"Cell {cell.key} failed: {e}")
            context.record_cell(cell.key, cell.seed, "failed", detail=f"{type(e).__name__}: {e}", duration_ms=duration_ms)
            return cell, None, e

        duration_ms = int((time.time() - start) * 1000)
        if cache is not None:
            cache.store(cell.key, result)
        context.record_cell(cell.key, cell.seed, "ok", duration_ms=duration_ms)
        logger.debug(f"Cell {cell.key} done in {duration_ms}ms")
        return cell, result, None

    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            finished = list(pool.map(run_one, cells))
    else:
        finished = [run_one(cell) for cell in cells]

    outcome = BatchOutcome()
    for cell, result, error in finished:
        if error is None:
            outcome.results[cell.key] = result
        else:
            outcome.failures.append((cell, error))
    logger.info(f"Ran {len(cells)} cells: {len(outcome.results)} succeeded, {len(outcome.failures)} failed")
    return outcome
