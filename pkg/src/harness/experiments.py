"""
Experiment kinds: each turns a validated config into a CSV plus a manifest.

Cells are (model, seed) units run through run_cells; aggregation walks the
cells in their declared order so outputs do not depend on scheduling.
"""
import logging
from pathlib import Path

import click
import numpy as np

from src.cavity.density import DensityCurve, default_grid, density_curve
from src.cavity.kesten_mckay import DomainError, kesten_mckay
from src.cavity.solver import CavityConvergenceError, SolverParams
from src.config import config
from src.ensemble.models import BlockModel, modular_model
from src.ensemble.sampler import sample
from src.harness.experiment_config import ExperimentConfig
from src.harness.output import write_csv
from src.harness.runner import (
    EXIT_CAVITY,
    EXIT_DEGENERATE,
    EXIT_INVALID,
    EXIT_OK,
    Cell,
    CellCache,
    run_cells,
)
from src.logging.context import RunLogContext
from src.logging.writer import write_manifest
from src.partition.divergence import ipr_divergence
from src.partition.recovery import recover
from src.partition.scoring import overlap
from src.spectrum.community import community_eigenpairs
from src.spectrum.density import default_bin_width, empirical_density, histogram_l1_distance
from src.spectrum.eigen import eigendecompose
from src.spectrum.ipr import ipr_values
from src.spectrum.thresholds import critical_ratio, modular_split


logger = logging.getLogger(__name__)

SPECTRUM_FIELDS = ["lambda", "rho_cavity", "rho_kesten_mckay", "rho_empirical"]
IPR_SCATTER_FIELDS = ["seed", "lambda", "ipr"]
PARTITION_FIELDS = ["seed", "method", "selectedEigenvalue", "selectedIpr", "overlap", "degenerate"]
DELTA_FIELDS = ["size", "meanDelta", "sdDelta"]
SWEEP_FIELDS = ["c", "r", "method", "meanOverlap", "r_c", "flag"]


def report(message: str):
    """Print a problem for the person running the command"""
    click.echo(f"error: {message}", err=True)


def _solver_params(experiment: ExperimentConfig) -> SolverParams:
    return SolverParams(tol=experiment.tol, max_iter=experiment.max_iter, damping=experiment.damping)


def _sample_and_decompose(model: BlockModel, seed: int):
    graph = sample(model, seed)
    return graph, eigendecompose(graph)


def _histogram_at(histogram: DensityCurve, bin_width: float, grid: np.ndarray) -> np.ndarray:
    """Value of the histogram bar covering each grid point"""
    first = int(round(histogram.lambdas[0] / bin_width))
    index = np.floor(grid / bin_width + 0.5).astype(np.int64) - first
    inside = (index >= 0) & (index < histogram.rho.size)
    values = np.zeros_like(grid)
    values[inside] = histogram.rho[index[inside]]
    return values


def run_spectrum(experiment: ExperimentConfig, out: Path, context: RunLogContext, cache: CellCache, resume: bool) -> int:
    """Cavity, closed-form and pooled empirical densities on one grid"""
    model = experiment.block_model()

    def work(cell: Cell) -> dict:
        _, eigs = _sample_and_decompose(model, cell.seed)
        return {"eigenvalues": eigs.eigenvalues}

    cells = [Cell(key=f"seed={seed}", seed=seed) for seed in experiment.seeds]
    outcome = run_cells(cells, work, context, experiment.workers, cache, resume)
    if not outcome.results:
        return outcome.exit_code
    pooled = np.concatenate([np.asarray(outcome.results[cell.key]["eigenvalues"]) for cell in cells if cell.key in outcome.results])

    grid = default_grid(model, experiment.grid_points)
    cavity = density_curve(model, grid, experiment.epsilon, _solver_params(experiment))
    c = model.degree
    closed_form = kesten_mckay(c, grid) if model.is_regular and c >= 2 else None
    bin_width = experiment.bin_width or default_bin_width(c)
    histogram = empirical_density(pooled, bin_width, support=(float(grid[0]), float(grid[-1])))
    empirical = _histogram_at(histogram, bin_width, grid)

    rows = []
    for k, lam in enumerate(grid):
        rows.append({
            "lambda": lam,
            "rho_cavity": cavity.rho[k],
            "rho_kesten_mckay": None if closed_form is None else closed_form[k],
            "rho_empirical": empirical[k],
        })
    write_csv(out, SPECTRUM_FIELDS, rows, experiment.output_format)

    aggregates = {
        "samples": len(outcome.results),
        "eigenvalues": int(pooled.size),
        "bin_width": float(bin_width),
        "cavity_mass": round(cavity.integral(), 6),
    }
    if closed_form is not None:
        outliers = [mu for mu, _ in community_eigenpairs(model.connectivity)]
        distance = histogram_l1_distance(histogram, lambda x: kesten_mckay(c, x), bin_width, exclude=outliers)
        aggregates["l1_empirical_vs_kesten_mckay"] = round(distance, 6)
    context.set_aggregates(aggregates)
    logger.info(f"Spectrum over {len(outcome.results)} samples written to {out}")
    return outcome.exit_code


def run_ipr_scatter(experiment: ExperimentConfig, out: Path, context: RunLogContext, cache: CellCache, resume: bool) -> int:
    """(eigenvalue, IPR) pairs of every eigenvector of every sample"""
    model = experiment.block_model()

    def work(cell: Cell) -> dict:
        _, eigs = _sample_and_decompose(model, cell.seed)
        return {"eigenvalues": eigs.eigenvalues, "iprs": ipr_values(eigs)}

    cells = [Cell(key=f"seed={seed}", seed=seed) for seed in experiment.seeds]
    outcome = run_cells(cells, work, context, experiment.workers, cache, resume)

    rows = []
    scaled = []
    for cell in cells:
        result = outcome.results.get(cell.key)
        if result is None:
            continue
        for lam, value in zip(result["eigenvalues"], result["iprs"]):
            rows.append({"seed": cell.seed, "lambda": lam, "ipr": value})
        scaled.append(np.asarray(result["iprs"]) * model.n)
    write_csv(out, IPR_SCATTER_FIELDS, rows, experiment.output_format)

    if scaled:
        pooled = np.concatenate(scaled)
        context.set_aggregates({
            "median_ipr_times_n": round(float(np.median(pooled)), 6),
            "min_ipr_times_n": round(float(pooled.min()), 6),
        })
    return outcome.exit_code


def run_partition_one(experiment: ExperimentConfig, out: Path, context: RunLogContext, cache: CellCache, resume: bool) -> int:
    """Sample, recover with each method and score against the planted labels"""
    model = experiment.block_model()
    if model.m != 2:
        raise ValueError(f"partitionOne recovers two blocks, model has m={model.m}")

    def work(cell: Cell) -> dict:
        graph, eigs = _sample_and_decompose(model, cell.seed)
        result = {}
        for method in experiment.methods:
            recovery = recover(eigs, method)
            result[f"{method}_eigenvalue"] = recovery.selected_eigenvalue
            result[f"{method}_ipr"] = recovery.selected_ipr
            result[f"{method}_overlap"] = overlap(recovery.partition, graph.labels)
            result[f"{method}_degenerate"] = recovery.degenerate
        return result

    cells = [Cell(key=f"seed={seed}", seed=seed) for seed in experiment.seeds]
    outcome = run_cells(cells, work, context, experiment.workers, cache, resume)

    rows = []
    any_degenerate = False
    overlaps: dict[str, list[float]] = {method: [] for method in experiment.methods}
    for cell in cells:
        result = outcome.results.get(cell.key)
        if result is None:
            continue
        for method in experiment.methods:
            degenerate = bool(result[f"{method}_degenerate"])
            any_degenerate = any_degenerate or degenerate
            overlaps[method].append(float(result[f"{method}_overlap"]))
            rows.append({
                "seed": cell.seed,
                "method": method,
                "selectedEigenvalue": float(result[f"{method}_eigenvalue"]),
                "selectedIpr": float(result[f"{method}_ipr"]),
                "overlap": float(result[f"{method}_overlap"]),
                "degenerate": degenerate,
            })
    write_csv(out, PARTITION_FIELDS, rows, experiment.output_format)
    context.set_aggregates({
        f"mean_overlap_{method}": round(float(np.mean(values)), 6)
        for method, values in overlaps.items() if values
    })

    if outcome.failures:
        return outcome.exit_code
    return EXIT_DEGENERATE if any_degenerate else EXIT_OK


def run_delta_scaling(experiment: ExperimentConfig, out: Path, context: RunLogContext, cache: CellCache, resume: bool) -> int:
    """Mean and population sd of the relative IPR divergence per size"""
    c_in, c_out = modular_split(experiment.c, experiment.r)

    def work(cell: Cell) -> dict:
        model = modular_model(cell.params["n"], c_in, c_out)
        _, eigs = _sample_and_decompose(model, cell.seed)
        divergence = ipr_divergence(eigs)
        return {"delta": divergence.delta, "ipr2": divergence.ipr2, "ipr3": divergence.ipr3}

    cells = [
        Cell(key=f"n={size:06d}/seed={seed}", seed=seed, params={"n": size})
        for size in experiment.sizes
        for seed in experiment.seeds
    ]
    outcome = run_cells(cells, work, context, experiment.workers, cache, resume)

    rows = []
    for size in experiment.sizes:
        deltas = [
            float(outcome.results[cell.key]["delta"])
            for cell in cells
            if cell.params["n"] == size and cell.key in outcome.results
        ]
        if deltas:
            rows.append({"size": size, "meanDelta": float(np.mean(deltas)), "sdDelta": float(np.std(deltas))})
        else:
            rows.append({"size": size})
    write_csv(out, DELTA_FIELDS, rows, experiment.output_format)
    context.set_aggregates({"c_in": c_in, "c_out": c_out, "sizes": len(experiment.sizes)})
    return outcome.exit_code


def _critical_ratio_or_none(c: int) -> float | None:
    try:
        return critical_ratio(c)
    except DomainError:
        return None


def run_threshold_sweep(experiment: ExperimentConfig, out: Path, context: RunLogContext, cache: CellCache, resume: bool) -> int:
    """Mean overlap of each method over a (c, r) grid, next to the analytic critical ratio"""
    splits = {}
    cells = []
    for c in experiment.c_values:
        for r in experiment.r_values:
            split = modular_split(c, r)
            splits[(c, r)] = split
            for seed in experiment.seeds:
                key = f"c={c:03d}/r={r:g}/seed={seed}"
                if split is None:
                    context.record_cell(key, seed, "skipped", detail=f"c_out = {c}/(1+{r:g}) is not an integer")
                    continue
                cells.append(Cell(key=key, seed=seed, params={"c": c, "r": r}))

    def work(cell: Cell) -> dict:
        c_in, c_out = splits[(cell.params["c"], cell.params["r"])]
        model = modular_model(experiment.n, c_in, c_out)
        graph, eigs = _sample_and_decompose(model, cell.seed)
        result = {}
        for method in experiment.methods:
            recovery = recover(eigs, method)
            result[f"{method}_overlap"] = overlap(recovery.partition, graph.labels)
            result[f"{method}_degenerate"] = recovery.degenerate
        return result

    outcome = run_cells(cells, work, context, experiment.workers, cache, resume)
    failed = {(cell.params["c"], cell.params["r"]) for cell, _ in outcome.failures}

    rows = []
    for c in experiment.c_values:
        r_c = _critical_ratio_or_none(c)
        for r in experiment.r_values:
            split = splits[(c, r)]
            point_cells = [cell for cell in cells if cell.params["c"] == c and cell.params["r"] == r]
            for method in experiment.methods:
                row = {"c": c, "r": float(r), "method": method, "r_c": r_c}
                if split is None:
                    row["flag"] = "skipped"
                    rows.append(row)
                    continue
                results = [outcome.results[cell.key] for cell in point_cells if cell.key in outcome.results]
                if results:
                    row["meanOverlap"] = float(np.mean([float(result[f"{method}_overlap"]) for result in results]))
                degenerate = split[0] == split[1] or any(bool(result[f"{method}_degenerate"]) for result in results)
                if (c, r) in failed:
                    row["flag"] = "failed"
                elif degenerate:
                    row["flag"] = "degenerate"
                else:
                    row["flag"] = ""
                rows.append(row)
    write_csv(out, SWEEP_FIELDS, rows, experiment.output_format)
    context.set_aggregates({
        "points": len(splits),
        "skipped_points": sum(1 for split in splits.values() if split is None),
    })
    return outcome.exit_code


RUNNERS = {
    "spectrum": run_spectrum,
    "iprScatter": run_ipr_scatter,
    "partitionOne": run_partition_one,
    "deltaScaling": run_delta_scaling,
    "thresholdSweep": run_threshold_sweep,
}


def run_experiment(experiment: ExperimentConfig, resume: bool = False) -> int:
    """
    Execute a validated experiment and write its CSV and manifest.

    Args:
        experiment: Validated config
        resume: Reuse cached cell results from an earlier run of the same config

    Returns:
        int: Exit code (0 ok, 1 degenerate, 2 invalid input, 3 sampler, 4 cavity)
    """
    out = config.resolve_output_path(experiment.output)
    context = RunLogContext(experiment.kind, experiment.echo())
    cache = CellCache(config.get_cache_dir(experiment.cache_name()))
    logger.info(f"Running {experiment.kind} experiment {context.run_id} -> {out}")

    try:
        code = RUNNERS[experiment.kind](experiment, out, context, cache, resume)
    except CavityConvergenceError as e:
        report(f"cavity solver did not converge at lambda={e.lambda_}: {e}")
        code = EXIT_CAVITY
    except ValueError as e:
        report(str(e))
        code = EXIT_INVALID

    manifest_path = write_manifest(context.to_manifest(), config.get_manifest_path(out))
    logger.info(f"Manifest written to {manifest_path} (exit code {code})")
    return code
