"""
Closed-form spectral law of random c-regular graphs
"""
import numpy as np


class DomainError(ValueError):
    """Raised when a closed-form quantity is evaluated outside its domain"""
    pass


def kesten_mckay(c: int, lambda_):
    """
    Kesten-McKay density c*sqrt(4(c-1) - l^2) / (2*pi*(c^2 - l^2)), zero outside the band.

    Args:
        c: Degree, at least 2
        lambda_: Scalar or array of spectral positions

    Returns:
        float for scalar input, ndarray otherwise

    Raises:
        DomainError: If c < 2
    """
    if c < 2:
        raise DomainError(f"Kesten-McKay density needs c >= 2, got c={c}")
    lam = np.asarray(lambda_, dtype=np.float64)
    radicand = 4.0 * (c - 1) - lam**2
    inside = radicand > 0
    safe = np.where(inside, radicand, 0.0)
    denominator = np.where(inside, 2.0 * np.pi * (c**2 - lam**2), 1.0)
    rho = np.where(inside, c * np.sqrt(safe) / denominator, 0.0)
    if np.ndim(lambda_) == 0:
        return float(rho)
    return rho


def kesten_mckay_resolvent(c: int, z: complex) -> complex:
    """
    Vertex variance of the infinite c-regular tree at z = lambda - i*epsilon.

    Solves the cavity fixed point D = 1/(z - (c-1) D) on the branch with
    Im D > 0, then returns 1/(z - c D).
    """
    if c < 1:
        raise DomainError(f"Regular-tree resolvent needs c >= 1, got c={c}")
    q = c - 1
    if q == 0:
        cavity = 1.0 / z
    else:
        root = np.sqrt(z * z - 4.0 * q + 0j)
        candidates = [(z + root) / (2.0 * q), (z - root) / (2.0 * q)]
        cavity = max(candidates, key=lambda d: d.imag)
    return complex(1.0 / (z - c * cavity))
