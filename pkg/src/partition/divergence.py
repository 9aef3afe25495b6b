"""
Relative IPR divergence between the two most extended non-Perron eigenvectors
"""
from dataclasses import dataclass

import numpy as np

from src.partition.recovery import perron_resolved_vectors
from src.spectrum.eigen import EigenSystem


@dataclass(frozen=True)
class IprDivergence:
    delta: float
    ipr2: float
    ipr3: float


def ipr_divergence(eigs: EigenSystem) -> IprDivergence:
    """
    Delta = (IPR_3 - IPR_2) / IPR_2 over the ascending IPRs of all but the top eigenvector.

    A gap that stays open as n grows means the community vector is separated
    from the most extended bulk vector.
    """
    if eigs.n < 3:
        raise ValueError("IPR divergence needs at least three vertices")
    vectors = perron_resolved_vectors(eigs)
    iprs = np.sort(np.sum(vectors[:, :-1] ** 4, axis=0))
    ipr2, ipr3 = float(iprs[0]), float(iprs[1])
    return IprDivergence(delta=(ipr3 - ipr2) / ipr2, ipr2=ipr2, ipr3=ipr3)
