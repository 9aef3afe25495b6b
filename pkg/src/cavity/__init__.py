"""
Cavity solvers and closed-form spectral laws
"""
from src.cavity.kesten_mckay import DomainError, kesten_mckay, kesten_mckay_resolvent
from src.cavity.solver import (
    CavityConvergenceError,
    CavitySolution,
    InstanceCavitySolution,
    SolverParams,
    SpectralPoint,
    dump_cavity_solution,
    solve_block_cavity,
    solve_instance_cavity,
)
from src.cavity.density import DensityCurve, default_grid, density_curve, format_float

__all__ = [
    "DomainError",
    "kesten_mckay",
    "kesten_mckay_resolvent",
    "CavityConvergenceError",
    "CavitySolution",
    "InstanceCavitySolution",
    "SolverParams",
    "SpectralPoint",
    "dump_cavity_solution",
    "solve_block_cavity",
    "solve_instance_cavity",
    "DensityCurve",
    "default_grid",
    "density_curve",
    "format_float",
]
