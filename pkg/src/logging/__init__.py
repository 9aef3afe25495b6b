"""
Run manifests for batch experiments
"""
from src.logging.models import CELL_STATUSES, CellRecord, RunManifest
from src.logging.formatter import format_manifest_markdown, manifest_metadata
from src.logging.writer import read_manifest, write_manifest
from src.logging.context import RunLogContext, config_digest, make_run_id

__all__ = [
    "CELL_STATUSES",
    "CellRecord",
    "RunManifest",
    "format_manifest_markdown",
    "manifest_metadata",
    "read_manifest",
    "write_manifest",
    "RunLogContext",
    "config_digest",
    "make_run_id",
]
