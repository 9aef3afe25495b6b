"""
Finite-size spectra: eigendecomposition, histograms, thresholds and IPR
"""
from src.spectrum.eigen import EigenResourceError, EigenSystem, canonicalize_signs, eigendecompose
from src.spectrum.density import default_bin_width, empirical_density, histogram_l1_distance
from src.spectrum.community import community_eigenpairs, lift_community_vector, lifted_residual
from src.spectrum.thresholds import (
    bisection_detectable,
    bulk_edge,
    community_eigenvalue,
    critical_ratio,
    modular_split,
)
from src.spectrum.ipr import IprTable, NormError, ipr, ipr_table, ipr_values

__all__ = [
    "EigenResourceError",
    "EigenSystem",
    "canonicalize_signs",
    "eigendecompose",
    "default_bin_width",
    "empirical_density",
    "histogram_l1_distance",
    "community_eigenpairs",
    "lift_community_vector",
    "lifted_residual",
    "bisection_detectable",
    "bulk_edge",
    "community_eigenvalue",
    "critical_ratio",
    "modular_split",
    "IprTable",
    "NormError",
    "ipr",
    "ipr_table",
    "ipr_values",
]
