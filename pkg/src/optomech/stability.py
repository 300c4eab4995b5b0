"""Routh-Hurwitz stability test for 4x4 real drift matrices.

The characteristic polynomial is assembled from power-sum traces via
Newton's identities rather than from an eigenvalue decomposition, so the
stability verdict does not depend on the eigensolver it is tested against.
"""

from __future__ import annotations

import numpy as np

from .errors import MarginalStabilityError

DEFAULT_MARGIN = 1e-10


def characteristic_coefficients(A: np.ndarray) -> tuple[float, float, float, float]:
    """Coefficients (a1, a2, a3, a4) of det(s I - A) = s^4 + a1 s^3 + ... + a4."""
    A = np.asarray(A, dtype=float)
    if A.shape != (4, 4):
        raise ValueError(f"A must be 4x4 (got shape {A.shape})")
    if not np.all(np.isfinite(A)):
        raise ValueError("A must have finite entries")
    A2 = A @ A
    A3 = A2 @ A
    p1 = float(np.trace(A))
    p2 = float(np.trace(A2))
    p3 = float(np.trace(A3))
    p4 = float(np.trace(A3 @ A))
    e1 = p1
    e2 = (e1 * p1 - p2) / 2.0
    e3 = (e2 * p1 - e1 * p2 + p3) / 3.0
    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4.0
    return (-e1, e2, -e3, e4)


def hurwitz_quantities(A: np.ndarray) -> tuple[float, float, float, float]:
    """The four quantities whose joint positivity is equivalent to stability.

    For s^4 + a1 s^3 + a2 s^2 + a3 s + a4 these are
    (a1, a3, a4, a1 a2 a3 - a3^2 - a1^2 a4).
    """
    a1, a2, a3, a4 = characteristic_coefficients(A)
    return (a1, a3, a4, a1 * a2 * a3 - a3 * a3 - a1 * a1 * a4)


def routh_hurwitz_stable(A: np.ndarray, margin: float = DEFAULT_MARGIN) -> bool:
    """True iff every eigenvalue of the 4x4 matrix A has negative real part.

    Quantities within +/-margin of zero raise MarginalStabilityError instead
    of returning a verdict; pass margin=0.0 to force a strict boolean.
    """
    if margin < 0:
        raise ValueError(f"margin must be >= 0 (got {margin!r})")
    quantities = hurwitz_quantities(A)
    if margin > 0 and any(abs(q) <= margin for q in quantities):
        raise MarginalStabilityError(
            f"Routh-Hurwitz quantity within +/-{margin:g} of zero: {quantities}"
        )
    return all(q > 0 for q in quantities)
