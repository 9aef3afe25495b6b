"""
Run logging context
"""
import hashlib
import json
import threading
import time
from datetime import datetime, timezone

from src import __version__
from src.logging.models import CellRecord, RunManifest


def config_digest(config_echo: dict) -> str:
    """Short stable hash of an effective configuration (key order ignored)"""
    canonical = json.dumps(config_echo, sort_keys=True, default=str, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:8]


def make_run_id(kind: str, config_echo: dict, started_at: datetime) -> str:
    """
    Run ID naming the experiment, its UTC start and its configuration.

    Example: thresholdSweep-20251203T141530.123456Z-5f1c09ab

    Runs of one kind sort chronologically; equal configurations share the
    trailing digest, so reruns of a grid are easy to pair up.
    """
    stamp = started_at.astimezone(timezone.utc).strftime("%Y%m%dT%H%M%S.%fZ")
    return f"{kind}-{stamp}-{config_digest(config_echo)}"


class RunLogContext:
    """
    Accumulates cell outcomes and timing over a batch run.
    Safe to update from worker threads.
    """

    def __init__(self, kind: str, config_echo: dict, run_id: str | None = None, timestamp: datetime | None = None):
        """
        Initialize the run context.

        Args:
            kind: Experiment kind
            config_echo: Effective configuration, defaults included
            run_id: Run ID (derived from kind, start time and configuration if not provided)
            timestamp: Start time (current UTC time if not provided)
        """
        self.timestamp = timestamp if timestamp else datetime.now(timezone.utc)
        self.start_time = time.time()
        self.kind = kind
        self.config_echo = dict(config_echo)
        self.run_id = run_id if run_id else make_run_id(kind, self.config_echo, self.timestamp)
        self.aggregates: dict = {}
        self._cells: dict[str, CellRecord] = {}
        self._lock = threading.Lock()

    def record_cell(self, key: str, seed: int, status: str, detail: str = "", duration_ms: int = 0):
        """Record the terminal state of a cell; a later record for the same key replaces it"""
        record = CellRecord(key=key, seed=int(seed), status=status, detail=detail, duration_ms=int(duration_ms))
        with self._lock:
            self._cells[key] = record

    def set_aggregates(self, aggregates: dict):
        self.aggregates = dict(aggregates)

    def get_duration_ms(self) -> int:
        """Calculate duration in milliseconds"""
        return int((time.time() - self.start_time) * 1000)

    def to_manifest(self) -> RunManifest:
        """
        Convert context to RunManifest, cells sorted by key.

        Returns:
            RunManifest: Complete manifest ready for formatting/writing
        """
        with self._lock:
            cells = [self._cells[key] for key in sorted(self._cells)]
        return RunManifest(
            run_id=self.run_id,
            kind=self.kind,
            started_at=self.timestamp,
            tool_version=__version__,
            config_echo=self.config_echo,
            cells=cells,
            aggregates=self.aggregates,
            wall_clock_ms=self.get_duration_ms(),
        )
