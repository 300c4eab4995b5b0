"""Linearized quantum dynamics of quadrature fluctuations.

Quadratures are ordered (dX, dY, dQ, dP) with vacuum variance 1/2:
dX = (da^+ + da)/sqrt(2), dY = i (da^+ - da)/sqrt(2) for the optical mode
and likewise dQ, dP for the mechanical mode.  Linearizing around a classical
steady state with field alpha_s gives the Langevin system

    dv/dt = A v + noise,        d<V>/dt = A V + V A^T + D,

with g = g0 alpha_s the field-enhanced coupling (g_R = Re g, g_I = Im g):

        [ -kappa/2   -Delta    -2 g_I     0      ]
    A = [  Delta     -kappa/2   2 g_R     0      ]
        [  0          0        -gamma/2   omega_m]
        [  2 g_R      2 g_I    -omega_m  -gamma/2]

    D = diag(kappa/2, kappa/2, gamma (n_th + 1/2), gamma (n_th + 1/2)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousRegimeError, SingularSystemError, StepSizeError, UnstableSystemError
from .model import SteadyState, SystemParams
from .rk4 import STEP_BOUND_FACTOR, rk4_step, step_times
from .stability import hurwitz_quantities

QUADRATURE_NAMES = ("X", "Y", "Q", "P")

# Guard band below the vacuum variance 1/2 before a quadrature counts as
# squeezed, so solver noise on an exact-vacuum variance never flags.
_SQUEEZE_GUARD = 1e-12

BEAM_SPLITTER = "beam_splitter"
TWO_MODE_SQUEEZER = "two_mode_squeezer"
OFF_RESONANT = "off_resonant"


@dataclass(frozen=True)
class CovarianceTrajectory:
    """Covariance matrix V(t) sampled on a fixed time grid."""

    t: np.ndarray  # shape (n,)
    V: np.ndarray  # shape (n, 4, 4), symmetric along the trailing axes


@dataclass(frozen=True)
class QuadratureVariances:
    """Diagonal of a covariance matrix plus below-vacuum flags."""

    var_x: float
    var_y: float
    var_q: float
    var_p: float
    squeezed: tuple[str, ...]


@dataclass(frozen=True)
class RegimeReport:
    """Dominant linearized interaction under a rotating-wave argument."""

    interaction_kind: str   # one of BEAM_SPLITTER, TWO_MODE_SQUEEZER, OFF_RESONANT
    resolved_sideband: bool
    g_s: float


def symplectic_form() -> np.ndarray:
    """Symplectic form Omega for the (dX, dY, dQ, dP) ordering."""
    J = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.block([[J, np.zeros((2, 2))], [np.zeros((2, 2)), J]])


def drift_matrix_from_rates(
    kappa: float, gamma: float, omega_m: float, Delta: float, g: complex
) -> np.ndarray:
    """Drift matrix A for explicit rates and field-enhanced coupling g."""
    g = complex(g)
    g_r, g_i = g.real, g.imag
    return np.array(
        [
            [-kappa / 2.0, -Delta, -2.0 * g_i, 0.0],
            [Delta, -kappa / 2.0, 2.0 * g_r, 0.0],
            [0.0, 0.0, -gamma / 2.0, omega_m],
            [2.0 * g_r, 2.0 * g_i, -omega_m, -gamma / 2.0],
        ]
    )


def drift_matrix(params: SystemParams, steady: SteadyState) -> np.ndarray:
    """Drift matrix linearized around a classical steady state."""
    g = params.g0 * complex(steady.alpha_s)
    return drift_matrix_from_rates(
        params.kappa, params.gamma, params.omega_m, steady.Delta_eff, g
    )


def diffusion_matrix(params: SystemParams) -> np.ndarray:
    """Diagonal diffusion matrix for vacuum optical and thermal mechanical baths."""
    mech = params.gamma * (params.n_th + 0.5)
    return np.diag([params.kappa / 2.0, params.kappa / 2.0, mech, mech])


def thermal_covariance(n_th: float) -> np.ndarray:
    """Uncoupled steady covariance: vacuum optics, thermal mechanics."""
    return np.diag([0.5, 0.5, n_th + 0.5, n_th + 0.5])


def steady_covariance(A: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Steady-state covariance solving A V + V A^T + D = 0.

    The Lyapunov equation is vectorized into the 16x16 Kronecker system
    (I (x) A + A (x) I) vec(V) = -vec(D) and solved directly.  Requires a
    strictly stable A (UnstableSystemError otherwise); a marginal or
    numerically singular system raises SingularSystemError.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    if A.shape != (4, 4) or D.shape != (4, 4):
        raise ValueError(f"A and D must be 4x4 (got {A.shape} and {D.shape})")
    if not np.allclose(D, D.T, rtol=0.0, atol=1e-12):
        raise ValueError("D must be symmetric")
    quantities = hurwitz_quantities(A)
    if not all(q > 0 for q in quantities):
        if any(abs(q) <= 1e-10 for q in quantities):
            raise SingularSystemError(
                "drift matrix is marginal (a Routh-Hurwitz quantity vanishes); "
                "the Lyapunov system is singular"
            )
        raise UnstableSystemError(
            "drift matrix has an eigenvalue with non-negative real part; "
            "no steady covariance exists"
        )
    eye = np.eye(4)
    K = np.kron(eye, A) + np.kron(A, eye)
    try:
        vec_v = np.linalg.solve(K, -D.reshape(16, order="F"))
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"Lyapunov system is singular: {exc}") from exc
    V = vec_v.reshape((4, 4), order="F")
    V = 0.5 * (V + V.T)
    residual = A @ V + V @ A.T + D
    scale = max(1.0, float(np.max(np.abs(D))))
    if not np.all(np.isfinite(V)) or np.max(np.abs(residual)) > 1e-8 * scale:
        raise SingularSystemError(
            "Lyapunov solve did not meet the residual tolerance "
            f"(max residual {np.max(np.abs(residual)):.3e})"
        )
    return V


def integrate_covariance(
    A: np.ndarray, D: np.ndarray, V0: np.ndarray, t_end: float, dt: float
) -> CovarianceTrajectory:
    """Integrate dV/dt = A V + V A^T + D with fixed-step RK4.

    dt must satisfy dt <= 0.05 / max rate, where the rates are read off the
    drift matrix (kappa, gamma, omega_m, |Delta|).  V is re-symmetrized after
    every step so round-off cannot accumulate asymmetry.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    V0 = np.asarray(V0, dtype=float)
    if A.shape != (4, 4) or D.shape != (4, 4) or V0.shape != (4, 4):
        raise ValueError("A, D and V0 must be 4x4")
    if not np.allclose(V0, V0.T, rtol=0.0, atol=1e-12):
        raise ValueError("V0 must be symmetric")
    kappa = -2.0 * A[0, 0]
    gamma = -2.0 * A[2, 2]
    omega_m = A[2, 3]
    Delta = A[1, 0]
    fastest = max(abs(kappa), abs(gamma), abs(omega_m), abs(Delta))
    if fastest > 0 and dt > STEP_BOUND_FACTOR / fastest:
        raise StepSizeError(
            f"dt = {dt:g} exceeds the step bound {STEP_BOUND_FACTOR / fastest:g} "
            f"for the fastest rate {fastest:g}"
        )

    def rhs(_t, V):
        return A @ V + V @ A.T + D

    times = step_times(t_end, dt)
    out = np.empty((times.size, 4, 4))
    V = 0.5 * (V0 + V0.T)
    out[0] = V
    for i in range(1, times.size):
        V = rk4_step(rhs, times[i - 1], V, times[i] - times[i - 1])
        V = 0.5 * (V + V.T)
        out[i] = V
    return CovarianceTrajectory(t=times, V=out)


def quadrature_variances(V: np.ndarray) -> QuadratureVariances:
    """Diagonal variances of V and the names of any squeezed quadratures."""
    V = np.asarray(V, dtype=float)
    if V.shape != (4, 4):
        raise ValueError(f"V must be 4x4 (got shape {V.shape})")
    diag = np.diag(V)
    squeezed = tuple(
        name for name, v in zip(QUADRATURE_NAMES, diag) if v < 0.5 - _SQUEEZE_GUARD
    )
    return QuadratureVariances(
        var_x=float(diag[0]),
        var_y=float(diag[1]),
        var_q=float(diag[2]),
        var_p=float(diag[3]),
        squeezed=squeezed,
    )


def physicality_min_eig(V: np.ndarray) -> float:
    """Smallest eigenvalue of V + (i/2) Omega; >= 0 for a physical state."""
    V = np.asarray(V, dtype=float)
    H = V.astype(complex) + 0.5j * symplectic_form()
    return float(np.min(np.linalg.eigvalsh(H)))


def rwa_interaction(
    Delta: float,
    omega_m: float,
    kappa: float,
    g_s: float,
    tol_res: float | None = None,
) -> RegimeReport:
    """Classify the dominant linearized interaction at detuning Delta.

    Within tol_res (default kappa/2) of Delta = -omega_m the co-rotating
    beam-splitter terms dominate; within tol_res of Delta = +omega_m the
    counter-rotating two-mode-squeezer terms dominate; otherwise neither
    resonance condition is met.  A tolerance wide enough to satisfy both
    conditions at once is rejected as ambiguous.
    """
    if not omega_m > 0:
        raise ValueError(f"omega_m must be > 0 (got {omega_m!r})")
    if not kappa > 0:
        raise ValueError(f"kappa must be > 0 (got {kappa!r})")
    if g_s < 0:
        raise ValueError(f"g_s must be >= 0 (got {g_s!r})")
    if tol_res is None:
        tol_res = kappa / 2.0
    if not tol_res > 0:
        raise ValueError(f"tol_res must be > 0 (got {tol_res!r})")
    near_red = abs(Delta + omega_m) <= tol_res
    near_blue = abs(Delta - omega_m) <= tol_res
    if near_red and near_blue:
        raise AmbiguousRegimeError(
            f"tol_res = {tol_res:g} covers both sideband resonances at "
            f"Delta = {Delta:g}, omega_m = {omega_m:g}"
        )
    if near_red:
        kind = BEAM_SPLITTER
    elif near_blue:
        kind = TWO_MODE_SQUEEZER
    else:
        kind = OFF_RESONANT
    return RegimeReport(
        interaction_kind=kind,
        resolved_sideband=kappa < omega_m / 10.0,
        g_s=g_s,
    )
