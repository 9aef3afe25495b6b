"""
Community recovery and scoring
"""
from src.partition.recovery import (
    METHODS,
    METHOD_IPR,
    METHOD_NAIVE,
    METHOD_NAIVE_LOWEST,
    RecoveryResult,
    dump_recovery_result,
    ipr_recovery,
    naive_bisection,
    perron_resolved_vectors,
    recover,
)
from src.partition.scoring import NoGroundTruthError, overlap
from src.partition.divergence import IprDivergence, ipr_divergence

__all__ = [
    "METHODS",
    "METHOD_IPR",
    "METHOD_NAIVE",
    "METHOD_NAIVE_LOWEST",
    "RecoveryResult",
    "dump_recovery_result",
    "ipr_recovery",
    "naive_bisection",
    "perron_resolved_vectors",
    "recover",
    "NoGroundTruthError",
    "overlap",
    "IprDivergence",
    "ipr_divergence",
]
