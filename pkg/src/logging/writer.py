"""
Manifest file writer and reader
"""
from pathlib import Path

import frontmatter

from src.logging.formatter import format_manifest_markdown
from src.logging.models import RunManifest


def write_manifest(manifest: RunManifest, path: Path) -> Path:
    """
    Write a run manifest to disk.

    Args:
        manifest: RunManifest to write
        path: Destination file

    Returns:
        Path: Path to written manifest

    Raises:
        IOError: If the write fails
    """
    content = format_manifest_markdown(manifest)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
        return path
    except Exception as e:
        raise IOError(f"Failed to write manifest: {e}") from e


def read_manifest(path: Path) -> dict:
    """Front matter of a manifest written by write_manifest"""
    with open(path, "r", encoding="utf-8") as f:
        post = frontmatter.load(f)
    return dict(post.metadata)
