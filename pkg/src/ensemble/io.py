"""
Edge-list and model document serialization.

Edge lists are plain text: a "# n=<N> m=<m>" header, an optional
"# labels=<comma-separated>" line with 1-based block numbers, then one
"u v" pair per line with 0-based vertex ids.

Model documents are YAML, either explicit:

    sizes: [500, 500]
    connectivity:
      - [16, 4]
      - [4, 16]

or the two-block shorthand ``n``, ``c_in``, ``c_out``.
"""
import logging
import re
from pathlib import Path

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.ensemble.models import BlockModel, ConnectivityMatrix, Graph, modular_model


logger = logging.getLogger(__name__)

HEADER_PATTERN = re.compile(r"^#\s*n=(\d+)\s+m=(\d+)\s*$")
LABELS_PATTERN = re.compile(r"^#\s*labels=(.*)$")


class ModelFileError(ValueError):
    """Raised when a model or edge-list document cannot be parsed"""
    pass


class ModelDocument(BaseModel):
    """Schema of a model document"""

    sizes: list[int] | None = None
    connectivity: list[list[int]] | None = None
    n: int | None = Field(default=None, gt=0)
    c_in: int | None = Field(default=None, ge=0)
    c_out: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _one_form(self) -> "ModelDocument":
        explicit = self.sizes is not None or self.connectivity is not None
        shorthand = self.c_in is not None or self.c_out is not None
        if explicit and shorthand:
            raise ValueError("use either sizes/connectivity or n/c_in/c_out, not both")
        if explicit and (self.sizes is None or self.connectivity is None):
            raise ValueError("sizes and connectivity must be given together")
        if shorthand and (self.c_in is None or self.c_out is None or self.n is None):
            raise ValueError("the two-block shorthand needs n, c_in and c_out")
        if not explicit and not shorthand:
            raise ValueError("document defines no model")
        return self

    def to_block_model(self) -> BlockModel:
        if self.c_in is not None:
            return modular_model(self.n, self.c_in, self.c_out)
        return BlockModel(sizes=tuple(self.sizes), connectivity=ConnectivityMatrix.from_rows(self.connectivity))


def parse_model(data: dict) -> BlockModel:
    """
    Build a BlockModel from a parsed document.

    Raises:
        ModelFileError: If the document is malformed
    """
    try:
        return ModelDocument.model_validate(data).to_block_model()
    except ValidationError as e:
        raise ModelFileError(f"Invalid model document: {e}") from e
    except ValueError as e:
        raise ModelFileError(f"Invalid model document: {e}") from e


def load_model(path: Path) -> BlockModel:
    """Load a block model from a YAML document"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ModelFileError(f"Cannot read model file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ModelFileError(f"Model file {path} must hold a mapping")
    model = parse_model(data)
    logger.debug(f"Loaded model from {path}: sizes={model.sizes}")
    return model


def dump_model(model: BlockModel, path: Path) -> Path:
    """Write a block model as an explicit YAML document"""
    document = {"sizes": list(model.sizes), "connectivity": model.connectivity.to_rows()}
    path.write_text(yaml.safe_dump(document, default_flow_style=None, sort_keys=False), encoding="utf-8")
    return path


def format_edge_list(graph: Graph, m: int | None = None) -> str:
    """Render a graph in the edge-list text format"""
    if m is None:
        m = int(graph.labels.max()) + 1 if graph.labels is not None and graph.labels.size else 1
    lines = [f"# n={graph.n} m={m}"]
    if graph.labels is not None:
        lines.append("# labels=" + ",".join(str(int(g) + 1) for g in graph.labels))
    lines.extend(f"{u} {v}" for u, v in graph.edges.tolist())
    return "\n".join(lines) + "\n"


def write_edge_list(graph: Graph, path: Path, m: int | None = None) -> Path:
    path.write_text(format_edge_list(graph, m), encoding="utf-8")
    return path


def read_edge_list(path: Path) -> tuple[Graph, int]:
    """
    Read a graph written by write_edge_list.

    Returns:
        (graph, m): labels are None when the file has no labels line

    Raises:
        ModelFileError: If the header is missing or a line is malformed
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFileError(f"Cannot read edge list {path}: {e}") from e

    lines = text.splitlines()
    if not lines or not HEADER_PATTERN.match(lines[0]):
        raise ModelFileError(f"Edge list {path} lacks the '# n=<N> m=<m>' header")
    header = HEADER_PATTERN.match(lines[0])
    n, m = int(header.group(1)), int(header.group(2))

    labels = None
    pairs: list[tuple[int, int]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        match = LABELS_PATTERN.match(line)
        if match:
            try:
                labels = np.array([int(g) - 1 for g in match.group(1).split(",")], dtype=np.int64)
            except ValueError as e:
                raise ModelFileError(f"{path}:{lineno}: bad labels line: {e}") from e
            continue
        if line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ModelFileError(f"{path}:{lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError as e:
            raise ModelFileError(f"{path}:{lineno}: {e}") from e
        if not (0 <= u < n and 0 <= v < n):
            raise ModelFileError(f"{path}:{lineno}: vertex id out of range for n={n}")
        pairs.append((u, v))

    if labels is not None and labels.size != n:
        raise ModelFileError(f"{path}: {labels.size} labels for n={n}")

    edges = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    return Graph(n=n, edges=edges, labels=labels), m
