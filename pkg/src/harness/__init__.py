"""
Experiment harness: configs, batch runner and CLI commands
"""
from src.harness.experiment_config import ExperimentConfig, ExperimentConfigError, load_experiment_config
from src.harness.runner import (
    EXIT_CAVITY,
    EXIT_DEGENERATE,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_SAMPLER,
    BatchOutcome,
    Cell,
    CellCache,
    exit_code_for,
    run_cells,
)
from src.harness.experiments import run_experiment
from src.harness.commands import (
    cmd_delta_scaling,
    cmd_ipr_scatter,
    cmd_partition,
    cmd_run,
    cmd_sample,
    cmd_spectrum,
    cmd_threshold_sweep,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentConfigError",
    "load_experiment_config",
    "EXIT_CAVITY",
    "EXIT_DEGENERATE",
    "EXIT_INVALID",
    "EXIT_OK",
    "EXIT_SAMPLER",
    "BatchOutcome",
    "Cell",
    "CellCache",
    "exit_code_for",
    "run_cells",
    "run_experiment",
    "cmd_delta_scaling",
    "cmd_ipr_scatter",
    "cmd_partition",
    "cmd_run",
    "cmd_sample",
    "cmd_spectrum",
    "cmd_threshold_sweep",
]
