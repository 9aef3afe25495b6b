"""
Markdown manifest formatter
"""
from dataclasses import asdict

import frontmatter

from src.logging.models import RunManifest


def manifest_metadata(manifest: RunManifest) -> dict:
    """Machine-readable form of a manifest (plain YAML-safe types)"""
    return {
        "run_id": manifest.run_id,
        "kind": manifest.kind,
        "started_at": manifest.started_at.isoformat(),
        "tool_version": manifest.tool_version,
        "wall_clock_ms": manifest.wall_clock_ms,
        "config": manifest.config_echo,
        "aggregates": manifest.aggregates,
        "cells": [asdict(cell) for cell in manifest.cells],
    }


def format_manifest_markdown(manifest: RunManifest) -> str:
    """
    Format a run manifest as a markdown document.

    The YAML front matter holds the full manifest; the body repeats it as
    tables for reading.

    Args:
        manifest: RunManifest to format

    Returns:
        str: Complete markdown document
    """
    sections = [
        f"# {manifest.kind} {manifest.started_at.strftime('%Y/%m/%d %H:%M:%S.%f UTC')}",
        "",
        _format_metadata_table(manifest),
        "",
        _format_aggregates_section(manifest.aggregates),
        "",
        _format_cells_table(manifest),
    ]
    post = frontmatter.Post("\n".join(sections), **manifest_metadata(manifest))
    return frontmatter.dumps(post) + "\n"


def _format_metadata_table(manifest: RunManifest) -> str:
    """Format metadata table section with compact, aligned columns"""
    counts = manifest.status_counts()
    cells_str = ", ".join(f"{status} {count}" for status, count in counts.items() if count)
    lines = [
        "| Key        | Value                                        |",
        "|------------|----------------------------------------------|",
        f"| Run ID     | {manifest.run_id:<44} |",
        f"| Kind       | {manifest.kind:<44} |",
        f"| Version    | {manifest.tool_version:<44} |",
        f"| Cells      | {cells_str or 'none':<44} |",
        f"| Duration   | {str(manifest.wall_clock_ms) + 'ms':<44} |",
    ]
    return "\n".join(lines)


def _format_aggregates_section(aggregates: dict) -> str:
    if not aggregates:
        return "## Aggregates\n\nNone"
    lines = ["## Aggregates", ""]
    lines.extend(f"- {key}: {value}" for key, value in aggregates.items())
    return "\n".join(lines)


def _format_cells_table(manifest: RunManifest) -> str:
    lines = [
        "## Cells",
        "",
        "| Key | Seed | Status | Duration | Detail |",
        "|-----|------|--------|----------|--------|",
    ]
    for cell in manifest.cells:
        detail = cell.detail.replace("|", "\\|").replace("\n", " ")
        lines.append(f"| {cell.key} | {cell.seed} | {cell.status} | {cell.duration_ms}ms | {detail} |")
    return "\n".join(lines)
