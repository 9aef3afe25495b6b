"""
Data models for run manifests
"""
from dataclasses import dataclass, field
from datetime import datetime

CELL_STATUSES = ("ok", "cached", "failed", "skipped")


@dataclass
class CellRecord:
    """Terminal state of one (model, seed) cell of a batch run"""

    key: str
    seed: int
    status: str
    detail: str = ""
    duration_ms: int = 0

    def __post_init__(self):
        if self.status not in CELL_STATUSES:
            raise ValueError(f"Unknown cell status {self.status!r}")


@dataclass
class RunManifest:
    """Complete record of a batch run"""

    run_id: str
    kind: str
    started_at: datetime
    tool_version: str
    config_echo: dict
    cells: list[CellRecord] = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)
    wall_clock_ms: int = 0

    def status_counts(self) -> dict[str, int]:
        counts = {status: 0 for status in CELL_STATUSES}
        for cell in self.cells:
            counts[cell.status] += 1
        return counts
