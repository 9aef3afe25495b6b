"""
Experiment configuration documents.

One YAML document describes one run: the experiment kind, the model or
parameter grid, the seeds, and the numerical controls. Every default is
materialized on the validated model so the manifest echoes the effective
configuration.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.config import config
from src.ensemble.io import ModelFileError, parse_model
from src.ensemble.models import BlockModel
from src.ensemble.validation import validate_model
from src.partition.recovery import METHODS
from src.spectrum.thresholds import modular_split


logger = logging.getLogger(__name__)

KINDS = ("spectrum", "iprScatter", "deltaScaling", "thresholdSweep", "partitionOne")
MODEL_KINDS = ("spectrum", "iprScatter", "partitionOne")


class ExperimentConfigError(ValueError):
    """Raised when an experiment document is invalid"""

    def __init__(self, message: str, errors: list[str] | None = None):
        super().__init__(message)
        self.errors = errors or []


def format_config_errors(validation_error: ValidationError) -> list[str]:
    """Flatten pydantic errors into 'field: message' lines"""
    errors = []
    for error in validation_error.errors():
        field_path = ".".join(str(loc) for loc in error["loc"]) or "config"
        message = error["msg"].removeprefix("Value error, ")
        errors.append(f"{field_path}: {message}")
    return errors


class ExperimentConfig(BaseModel):
    """Validated description of one experiment run"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["spectrum", "iprScatter", "deltaScaling", "thresholdSweep", "partitionOne"]
    output: str
    seeds: list[int] = Field(min_length=1)

    # Model-based kinds: a model document, optionally resized to n equal blocks
    model: dict[str, Any] | None = None
    n: int | None = Field(default=None, gt=0)

    # deltaScaling: total degree, ratio and the list of sizes
    c: int | None = Field(default=None, ge=0)
    r: float | None = Field(default=None, ge=0)
    sizes: list[int] | None = None

    # thresholdSweep grid (n above is the graph size)
    c_values: list[int] | None = None
    r_values: list[float] | None = None

    methods: list[Literal["naive", "naiveLowest", "iprSearch"]] = Field(default_factory=lambda: ["naive", "iprSearch"])

    epsilon: float = Field(default_factory=lambda: config.EPSILON_PLOT, gt=0)
    grid_points: int = Field(default_factory=lambda: config.GRID_POINTS, ge=2)
    bin_width: float | None = Field(default=None, gt=0)
    tol: float = Field(default_factory=lambda: config.CAVITY_TOL, gt=0)
    max_iter: int = Field(default_factory=lambda: config.CAVITY_MAX_ITER, gt=0)
    damping: float = Field(default_factory=lambda: config.CAVITY_DAMPING, gt=0, le=1)
    workers: int = Field(default_factory=lambda: config.WORKERS, ge=1)
    output_format: Literal["csv"] = "csv"

    @field_validator("seeds")
    @classmethod
    def _seeds_non_negative(cls, seeds: list[int]) -> list[int]:
        if any(seed < 0 for seed in seeds):
            raise ValueError("seeds must be non-negative")
        if len(set(seeds)) != len(seeds):
            raise ValueError("seeds must be distinct")
        return seeds

    @field_validator("methods")
    @classmethod
    def _methods_known(cls, methods: list[str]) -> list[str]:
        if not methods:
            raise ValueError(f"at least one method is required ({', '.join(METHODS)})")
        return methods

    @model_validator(mode="after")
    def _kind_fields(self) -> "ExperimentConfig":
        if self.kind in MODEL_KINDS:
            if self.model is None:
                raise ValueError(f"kind {self.kind} needs a model")
            violations = validate_model(self.block_model())
            if violations:
                raise ValueError("model violates the equitable constraints: " + "; ".join(violations))
        elif self.kind == "deltaScaling":
            if self.c is None or self.r is None or not self.sizes:
                raise ValueError("kind deltaScaling needs c, r and sizes")
            if modular_split(self.c, self.r) is None:
                raise ValueError(f"c={self.c}, r={self.r} gives a non-integral c_out")
            if any(size <= 0 or size % 2 for size in self.sizes):
                raise ValueError("sizes must be positive and even")
            if len(set(self.sizes)) != len(self.sizes):
                raise ValueError("sizes must be distinct")
        elif self.kind == "thresholdSweep":
            if not self.c_values or not self.r_values or self.n is None:
                raise ValueError("kind thresholdSweep needs c_values, r_values and n")
            if self.n % 2:
                raise ValueError("n must be even")
        return self

    def block_model(self) -> BlockModel:
        """
        Model of a model-based kind, resized when n is set.

        Raises:
            ValueError: If the document is malformed or cannot be resized
        """
        try:
            model = parse_model(self.model)
        except ModelFileError as e:
            raise ValueError(str(e)) from e
        if self.n is not None and self.n != model.n:
            model = model.with_size(self.n)
        return model

    def echo(self) -> dict:
        return self.model_dump(mode="json")

    def fingerprint(self) -> str:
        """Digest of the parameters that determine cell results"""
        data = self.echo()
        for key in ("output", "output_format", "workers"):
            data.pop(key, None)
        return hashlib.sha256(json.dumps(data, sort_keys=True).encode("utf-8")).hexdigest()[:12]

    def cache_name(self) -> str:
        return f"{self.kind}-{Path(self.output).stem}-{self.fingerprint()}"

    @classmethod
    def build(cls, **fields) -> "ExperimentConfig":
        """
        Validate keyword fields into a config.

        Raises:
            ExperimentConfigError: With one line per problem
        """
        try:
            return cls.model_validate(fields)
        except ValidationError as e:
            errors = format_config_errors(e)
            raise ExperimentConfigError("Invalid experiment config: " + "; ".join(errors), errors) from e


def load_experiment_config(path: Path) -> ExperimentConfig:
    """
    Load and validate an experiment document.

    Raises:
        ExperimentConfigError: If the file is unreadable or invalid
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ExperimentConfigError(f"Cannot read experiment config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ExperimentConfigError(f"Experiment config {path} must hold a mapping")
    experiment = ExperimentConfig.build(**data)
    logger.debug(f"Loaded {experiment.kind} experiment from {path}")
    return experiment
