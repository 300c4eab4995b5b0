import numpy as np
import pytest

from optomech.errors import MarginalStabilityError
from optomech.stability import (
    characteristic_coefficients,
    hurwitz_quantities,
    routh_hurwitz_stable,
)


def test_coefficients_of_minus_identity():
    # det(sI + I) = (s+1)^4 = s^4 + 4s^3 + 6s^2 + 4s + 1
    a = characteristic_coefficients(-np.eye(4))
    assert a == pytest.approx((4.0, 6.0, 4.0, 1.0), abs=1e-14)


def test_coefficients_match_polynomial_oracle():
    rng = np.random.default_rng(42)
    for _ in range(300):
        A = rng.uniform(-3, 3, (4, 4))
        ours = np.array(characteristic_coefficients(A))
        oracle = np.poly(A)[1:]  # numpy builds these from eigenvalues
        scale = np.maximum(1.0, np.abs(oracle))
        assert np.all(np.abs(ours - oracle) <= 1e-10 * scale)


def test_stable_and_unstable_diagonals():
    assert routh_hurwitz_stable(np.diag([-1.0, -2.0, -3.0, -4.0]))
    assert not routh_hurwitz_stable(np.diag([1.0, -2.0, -3.0, -4.0]))
    assert not routh_hurwitz_stable(np.diag([1.0, 2.0, 3.0, 4.0]))


def test_verdict_matches_eigenvalues_on_random_matrices():
    rng = np.random.default_rng(1)
    checked = 0
    for _ in range(500):
        A = rng.uniform(-2, 2, (4, 4))
        lam = np.max(np.linalg.eigvals(A).real)
        if abs(lam) <= 1e-6:
            continue
        try:
            verdict = routh_hurwitz_stable(A)
        except MarginalStabilityError:
            continue
        assert verdict == (lam < 0), f"disagreement at max Re(eig) = {lam}"
        checked += 1
    assert checked > 400


def test_marginal_rotation_block_raises():
    # (s^2 + 1)(s + 1)^2: undamped oscillator pair, Hurwitz determinant = 0
    A = np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ]
    )
    with pytest.raises(MarginalStabilityError):
        routh_hurwitz_stable(A)
    # strict mode must return a verdict, and marginal is not strictly stable
    assert routh_hurwitz_stable(A, margin=0.0) is False


def test_hurwitz_quantities_positive_iff_stable():
    A = np.array(
        [
            [-0.075, 1.0, 0.0, 0.0],
            [-1.0, -0.075, 0.1, 0.0],
            [0.0, 0.0, -0.0025, 1.0],
            [0.1, 0.0, -1.0, -0.0025],
        ]
    )
    q = hurwitz_quantities(A)
    assert routh_hurwitz_stable(A, margin=0.0) == all(v > 0 for v in q)


def test_input_validation():
    with pytest.raises(ValueError, match="4x4"):
        routh_hurwitz_stable(np.eye(3))
    with pytest.raises(ValueError, match="finite"):
        routh_hurwitz_stable(np.full((4, 4), np.nan))
    with pytest.raises(ValueError, match="margin"):
        routh_hurwitz_stable(-np.eye(4), margin=-1.0)
