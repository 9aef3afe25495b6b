"""
Empirical spectral density: normalized eigenvalue histograms
"""
import logging
import math

import numpy as np
from scipy.integrate import quad

from src.cavity.density import DensityCurve
from src.spectrum.eigen import EigenSystem


logger = logging.getLogger(__name__)


def default_bin_width(c: int) -> float:
    """Sixty bins across the bulk [-2 sqrt(c-1), 2 sqrt(c-1)]"""
    if c < 2:
        return 0.1
    return 4.0 * math.sqrt(c - 1) / 60.0


def empirical_density(
    eigs,
    bin_width: float,
    support: tuple[float, float] | None = None,
) -> DensityCurve:
    """
    Normalized histogram of eigenvalues with bins centred on multiples of bin_width.

    Args:
        eigs: EigenSystem or any array of (possibly pooled) eigenvalues
        bin_width: Positive bin width
        support: Optional interval the bins must cover, so curves from
            different runs share one grid

    Returns:
        DensityCurve with bin centres as lambdas and area 1
    """
    if bin_width <= 0:
        raise ValueError(f"bin width must be positive, got {bin_width}")
    values = eigs.eigenvalues if isinstance(eigs, EigenSystem) else np.asarray(eigs, dtype=np.float64).ravel()
    if values.size == 0:
        raise ValueError("No eigenvalues to histogram")

    lo, hi = float(values.min()), float(values.max())
    if support is not None:
        lo, hi = min(lo, support[0]), max(hi, support[1])
    k_lo = math.floor(lo / bin_width + 0.5)
    k_hi = math.floor(hi / bin_width + 0.5)
    centres = np.arange(k_lo, k_hi + 1, dtype=np.float64) * bin_width
    edges = np.append(centres - bin_width / 2, centres[-1] + bin_width / 2)

    counts, _ = np.histogram(values, bins=edges)
    rho = counts / (values.size * bin_width)
    return DensityCurve(lambdas=centres, rho=rho)


def histogram_l1_distance(curve: DensityCurve, density_fn, bin_width: float, exclude=()) -> float:
    """
    L1 distance between a histogram and a reference density, bin by bin.

    The reference is averaged over each bin by quadrature so the comparison
    does not depend on where inside a bin the density varies. Bins containing
    any of the exclude points are skipped.
    """
    half = bin_width / 2
    exclude = np.asarray(list(exclude), dtype=np.float64)
    total = 0.0
    skipped = 0
    for centre, height in zip(curve.lambdas, curve.rho):
        left, right = centre - half, centre + half
        if exclude.size and np.any((exclude >= left) & (exclude < right)):
            skipped += 1
            continue
        mass, _ = quad(lambda x: float(density_fn(x)), left, right, limit=100)
        total += abs(height * bin_width - mass)
    logger.debug(f"L1 distance {total:.4f} over {curve.lambdas.size - skipped} bins ({skipped} excluded)")
    return float(total)
