"""
Equitable Spectra command line.

Usage: python -m src.main <command> [options]
"""
import logging

import click

from src import __version__
from src.config import config
from src.harness.commands import (
    cmd_delta_scaling,
    cmd_ipr_scatter,
    cmd_partition,
    cmd_run,
    cmd_sample,
    cmd_spectrum,
    cmd_threshold_sweep,
)
from src.harness.output import OUTPUT_FORMATS
from src.partition.recovery import METHODS


logger = logging.getLogger(__name__)


def _split_list(convert):
    """Click callback parsing a comma-separated option"""

    def parse(ctx, param, value):
        if value is None:
            return None
        try:
            return [convert(item) for item in value.split(",") if item.strip()]
        except ValueError as e:
            raise click.BadParameter(f"expected comma-separated values: {e}") from e

    return parse


def _common_output(f):
    f = click.option("--format", "output_format", type=click.Choice(list(OUTPUT_FORMATS)), default="csv",
                     show_default=True, help="Table format of the written results")(f)
    f = click.option("--out", default=None, help="Output file; bare names go under EQUITABLE_OUTPUT_DIR")(f)
    return f


def _batch_options(f):
    f = click.option("--resume", is_flag=True, help="Reuse cell results cached by an earlier identical run")(f)
    f = click.option("--workers", type=click.IntRange(min=1), default=None, help="Threads for independent cells")(f)
    f = click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="First seed")(f)
    return f


@click.group()
@click.version_option(__version__)
@click.option("--log-level", default=None, help="Logging level (default LOG_LEVEL)")
def cli(log_level: str | None):
    """Spectra and community recovery on equitable random graphs."""
    logging.basicConfig(
        level=(log_level or config.LOG_LEVEL).upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


@cli.command()
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--seed", type=click.IntRange(min=0), required=True, help="Sampler seed")
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Resize to n vertices in equal blocks")
@click.option("--shuffle", is_flag=True, help="Randomly permute vertex ids")
@click.option("--out", default=None, help="Edge-list file; bare names go under EQUITABLE_OUTPUT_DIR")
@click.pass_context
def sample(ctx, model_file, seed, n, shuffle, out):
    """Sample one equitable graph from MODEL_FILE."""
    ctx.exit(cmd_sample(model_file, seed, out=out, n=n, shuffle=shuffle))


@cli.command()
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--samples", type=click.IntRange(min=1), default=1, show_default=True, help="Graphs pooled")
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Resize to n vertices in equal blocks")
@click.option("--epsilon", type=float, default=None, help="Cavity regularizer (default EPSILON_PLOT)")
@click.option("--tol", type=float, default=None, help="Cavity tolerance (default CAVITY_TOL)")
@click.option("--max-iter", type=click.IntRange(min=1), default=None, help="Cavity iteration cap")
@click.option("--grid-points", type=click.IntRange(min=2), default=None, help="Points on the lambda grid")
@click.option("--bin-width", type=float, default=None, help="Histogram bin width")
@_batch_options
@_common_output
@click.pass_context
def spectrum(ctx, model_file, samples, n, epsilon, tol, max_iter, grid_points, bin_width, seed, workers, resume,
             out, output_format):
    """Cavity, Kesten-McKay and empirical spectral densities."""
    ctx.exit(cmd_spectrum(
        model_file, samples, n=n, epsilon=epsilon, out=out, seed=seed, tol=tol, max_iter=max_iter,
        grid_points=grid_points, bin_width=bin_width, workers=workers, resume=resume, output_format=output_format,
    ))


@cli.command("ipr-scatter")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--samples", type=click.IntRange(min=1), default=1, show_default=True, help="Graphs sampled")
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Resize to n vertices in equal blocks")
@_batch_options
@_common_output
@click.pass_context
def ipr_scatter(ctx, model_file, samples, n, seed, workers, resume, out, output_format):
    """Eigenvalue and IPR of every eigenvector."""
    ctx.exit(cmd_ipr_scatter(
        model_file, samples, n=n, out=out, seed=seed, workers=workers, resume=resume, output_format=output_format,
    ))


@cli.command()
@click.argument("graph_file", type=click.Path(dir_okay=False))
@click.option("--method", type=click.Choice(list(METHODS)), default="iprSearch", show_default=True)
@click.option("--overlap", "score", is_flag=True, help="Score against the labels line of GRAPH_FILE")
@click.option("--out", default=None, help="Result file; bare names go under EQUITABLE_OUTPUT_DIR")
@click.pass_context
def partition(ctx, graph_file, method, score, out):
    """Recover two communities from GRAPH_FILE."""
    ctx.exit(cmd_partition(graph_file, method, out=out, score=score))


@cli.command("delta-scaling")
@click.option("--c", "c", type=click.IntRange(min=2), required=True, help="Total degree")
@click.option("--r", "r", type=click.FloatRange(min=0), required=True, help="Ratio c_in / c_out")
@click.option("--sizes", callback=_split_list(int), required=True, help="Comma-separated graph sizes")
@click.option("--seeds-per-size", type=click.IntRange(min=1), default=10, show_default=True)
@_batch_options
@_common_output
@click.pass_context
def delta_scaling(ctx, c, r, sizes, seeds_per_size, seed, workers, resume, out, output_format):
    """Relative IPR divergence against graph size."""
    ctx.exit(cmd_delta_scaling(
        c, r, sizes, seeds_per_size, out=out, seed=seed, workers=workers, resume=resume, output_format=output_format,
    ))


@cli.command("threshold-sweep")
@click.option("--c-values", callback=_split_list(int), required=True, help="Comma-separated total degrees")
@click.option("--r-values", callback=_split_list(float), required=True, help="Comma-separated ratios")
@click.option("--n", "n", type=click.IntRange(min=2), required=True, help="Graph size")
@click.option("--seeds", type=click.IntRange(min=1), default=10, show_default=True, help="Seeds per cell")
@click.option("--method", "methods", type=click.Choice(list(METHODS)), multiple=True,
              help="Recovery method (repeatable; default naive and iprSearch)")
@_batch_options
@_common_output
@click.pass_context
def threshold_sweep(ctx, c_values, r_values, n, seeds, methods, seed, workers, resume, out, output_format):
    """Mean overlap over a (c, r) grid next to the critical line."""
    ctx.exit(cmd_threshold_sweep(
        c_values, r_values, n, seeds, out=out, methods=list(methods) or None, seed=seed,
        workers=workers, resume=resume, output_format=output_format,
    ))


@cli.command()
@click.argument("config_file", type=click.Path(dir_okay=False))
@click.option("--resume", is_flag=True, help="Reuse cell results cached by an earlier identical run")
@click.pass_context
def run(ctx, config_file, resume):
    """Run the experiment described by CONFIG_FILE."""
    ctx.exit(cmd_run(config_file, resume=resume))


if __name__ == "__main__":
    cli()
