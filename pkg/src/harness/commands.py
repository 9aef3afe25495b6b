"""
Command implementations behind the CLI.

Each returns a process exit code: 0 success, 1 degenerate partition,
2 invalid input, 3 sampler failure, 4 cavity non-convergence.
"""
import logging
from pathlib import Path

import click

from src.config import config
from src.ensemble.io import ModelFileError, load_model, read_edge_list, write_edge_list
from src.ensemble.models import BlockModel
from src.ensemble.sampler import SamplerError, sample
from src.ensemble.validation import validate_model
from src.harness.experiment_config import ExperimentConfig, ExperimentConfigError, load_experiment_config
from src.harness.experiments import report, run_experiment
from src.harness.runner import EXIT_DEGENERATE, EXIT_INVALID, EXIT_OK, EXIT_SAMPLER
from src.partition.recovery import dump_recovery_result, recover
from src.partition.scoring import NoGroundTruthError, overlap
from src.spectrum.eigen import EigenResourceError, eigendecompose


logger = logging.getLogger(__name__)


def _model_document(model: BlockModel) -> dict:
    return {"sizes": list(model.sizes), "connectivity": model.connectivity.to_rows()}


def _build_and_run(resume: bool, **fields) -> int:
    """Validate CLI options into an experiment config and run it; unset options keep their defaults"""
    fields = {name: value for name, value in fields.items() if value is not None}
    try:
        experiment = ExperimentConfig.build(**fields)
    except ExperimentConfigError as e:
        for error in e.errors or [str(e)]:
            report(error)
        return EXIT_INVALID
    return run_experiment(experiment, resume=resume)


def _load_model_or_report(model_file: str) -> BlockModel | None:
    try:
        return load_model(Path(model_file))
    except ModelFileError as e:
        report(str(e))
        return None


def cmd_sample(model_file: str, seed: int, out: str | None = None, n: int | None = None, shuffle: bool = False) -> int:
    """Sample one equitable graph and write it as an edge list"""
    model = _load_model_or_report(model_file)
    if model is None:
        return EXIT_INVALID
    if n is not None:
        try:
            model = model.with_size(n)
        except ValueError as e:
            report(str(e))
            return EXIT_INVALID

    violations = validate_model(model)
    if violations:
        for violation in violations:
            report(violation)
        return EXIT_INVALID

    try:
        graph = sample(model, seed, shuffle=shuffle)
    except SamplerError as e:
        report(str(e))
        return EXIT_SAMPLER

    path = write_edge_list(graph, config.resolve_output_path(out or f"graph-seed{seed}.txt"), model.m)
    logger.info(f"Sampled n={graph.n} with {graph.num_edges} edges (seed {seed}) -> {path}")
    click.echo(str(path))
    return EXIT_OK


def cmd_spectrum(
    model_file: str,
    samples: int,
    n: int | None = None,
    epsilon: float | None = None,
    out: str | None = None,
    seed: int = 0,
    tol: float | None = None,
    max_iter: int | None = None,
    grid_points: int | None = None,
    bin_width: float | None = None,
    workers: int | None = None,
    resume: bool = False,
    output_format: str | None = None,
) -> int:
    """Cavity, Kesten-McKay and pooled empirical densities of a model"""
    model = _load_model_or_report(model_file)
    if model is None:
        return EXIT_INVALID
    return _build_and_run(
        resume,
        kind="spectrum",
        output=out or "spectrum.csv",
        seeds=list(range(seed, seed + samples)),
        model=_model_document(model),
        n=n,
        epsilon=epsilon,
        tol=tol,
        max_iter=max_iter,
        grid_points=grid_points,
        bin_width=bin_width,
        workers=workers,
        output_format=output_format,
    )


def cmd_ipr_scatter(
    model_file: str,
    samples: int,
    n: int | None = None,
    out: str | None = None,
    seed: int = 0,
    workers: int | None = None,
    resume: bool = False,
    output_format: str | None = None,
) -> int:
    """Eigenvalue and IPR of every eigenvector of sampled graphs"""
    model = _load_model_or_report(model_file)
    if model is None:
        return EXIT_INVALID
    return _build_and_run(
        resume,
        kind="iprScatter",
        output=out or "ipr-scatter.csv",
        seeds=list(range(seed, seed + samples)),
        model=_model_document(model),
        n=n,
        workers=workers,
        output_format=output_format,
    )


def cmd_partition(graph_file: str, method: str, out: str | None = None, score: bool = False) -> int:
    """
    Recover two blocks from a graph file.

    With score=True the overlap against the file's labels is added, which
    fails when the file carries no labels line.
    """
    try:
        graph, m = read_edge_list(Path(graph_file))
    except ModelFileError as e:
        report(str(e))
        return EXIT_INVALID
    if m != 2:
        logger.warning(f"{graph_file} declares m={m}; recovery always splits into two blocks")

    try:
        eigs = eigendecompose(graph)
        if not graph.is_connected():
            logger.warning(f"{graph_file} is disconnected; the top eigenvector may not be the constant one")
        result = recover(eigs, method)
    except (EigenResourceError, ValueError) as e:
        report(str(e))
        return EXIT_INVALID

    score_value = None
    if score:
        try:
            score_value = overlap(result.partition, graph.labels)
        except NoGroundTruthError as e:
            report(f"no ground truth: {e}")
            return EXIT_INVALID

    path = config.resolve_output_path(out or f"{Path(graph_file).stem}.{method}.yaml")
    dump_recovery_result(result, path, score_value)
    click.echo(path.read_text(encoding="utf-8"), nl=False)
    return EXIT_DEGENERATE if result.degenerate else EXIT_OK


def cmd_delta_scaling(
    c: int,
    r: float,
    sizes: list[int],
    seeds_per_size: int,
    out: str | None = None,
    seed: int = 0,
    workers: int | None = None,
    resume: bool = False,
    output_format: str | None = None,
) -> int:
    """Relative IPR divergence against graph size"""
    return _build_and_run(
        resume,
        kind="deltaScaling",
        output=out or "delta-scaling.csv",
        seeds=list(range(seed, seed + seeds_per_size)),
        c=c,
        r=r,
        sizes=list(sizes),
        workers=workers,
        output_format=output_format,
    )


def cmd_threshold_sweep(
    c_values: list[int],
    r_values: list[float],
    n: int,
    seeds: int,
    out: str | None = None,
    methods: list[str] | None = None,
    seed: int = 0,
    workers: int | None = None,
    resume: bool = False,
    output_format: str | None = None,
) -> int:
    """Mean overlap of each method over a (c, r) grid"""
    return _build_and_run(
        resume,
        kind="thresholdSweep",
        output=out or "threshold-sweep.csv",
        seeds=list(range(seed, seed + seeds)),
        c_values=list(c_values),
        r_values=list(r_values),
        n=n,
        methods=list(methods) if methods else None,
        workers=workers,
        output_format=output_format,
    )


def cmd_run(config_file: str, resume: bool = False) -> int:
    """Run an experiment described by a YAML document"""
    try:
        experiment = load_experiment_config(Path(config_file))
    except ExperimentConfigError as e:
        for error in e.errors or [str(e)]:
            report(error)
        return EXIT_INVALID
    return run_experiment(experiment, resume=resume)
