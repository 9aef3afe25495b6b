"""
Bulk edges, community eigenvalues and the naive-bisection critical line
"""
import math

from src.cavity.kesten_mckay import DomainError


def bulk_edge(c: int) -> float:
    """Upper edge 2*sqrt(c-1) of the continuous spectrum; the lower edge is its negation"""
    if c < 2:
        raise DomainError(f"Bulk edge needs c >= 2, got c={c}")
    return 2.0 * math.sqrt(c - 1)


def critical_ratio(c: int) -> float:
    """
    Assortativity ratio r_c = (c + 2 sqrt(c-1)) / (c - 2 sqrt(c-1)).

    Above r_c the community eigenvalue c_in - c_out leaves the bulk and
    the second eigenvector splits the blocks.
    """
    if c < 2:
        raise DomainError(f"Critical ratio needs c >= 2, got c={c}")
    edge = bulk_edge(c)
    denominator = c - edge
    if denominator <= 0:
        raise DomainError(f"Critical ratio undefined for c={c}: c - 2 sqrt(c-1) = {denominator:.3g} <= 0")
    return (c + edge) / denominator


def community_eigenvalue(c_in: int, c_out: int) -> int:
    return c_in - c_out


def bisection_detectable(c_in: int, c_out: int) -> bool:
    """
    Whether the community eigenvalue lies outside the bulk.

    Covers the assortative case (lambda_com above the upper edge) and the
    disassortative one (lambda_com below the lower edge).
    """
    c = c_in + c_out
    if c < 2:
        return False
    return abs(community_eigenvalue(c_in, c_out)) > bulk_edge(c)


def modular_split(c: int, r: float) -> tuple[int, int] | None:
    """
    Integer (c_in, c_out) with c_in + c_out = c and c_in / c_out = r.

    Returns None when c_out = c / (1 + r) is not an integer.
    """
    if r < 0:
        raise DomainError(f"Ratio must be non-negative, got r={r}")
    c_out = c / (1.0 + r)
    rounded = round(c_out)
    if abs(c_out - rounded) > 1e-9:
        return None
    return c - rounded, rounded
