"""
CSV output with stable number formatting
"""
import csv
from pathlib import Path

import numpy as np

from src.cavity.density import format_float


def _cell_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


OUTPUT_FORMATS = ("csv",)


def write_csv(path: Path, fieldnames: list[str], rows: list[dict], output_format: str = "csv") -> Path:
    """
    Write rows under a header; missing fields are left empty.

    Raises:
        ValueError: If output_format is not one of OUTPUT_FORMATS
    """
    if output_format not in OUTPUT_FORMATS:
        raise ValueError(f"Unsupported output format '{output_format}' (supported: {', '.join(OUTPUT_FORMATS)})")
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({name: _cell_text(row.get(name)) for name in fieldnames})
    return path
