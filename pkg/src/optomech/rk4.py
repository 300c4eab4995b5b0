"""Fixed-step classical fourth-order Runge-Kutta integration."""

from __future__ import annotations

from typing import Callable

import numpy as np

# Fraction of the fastest system time scale a single step may cover.
STEP_BOUND_FACTOR = 0.05


def rk4_step(f: Callable, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step for y' = f(t, y)."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step_times(t_end: float, dt: float) -> np.ndarray:
    """Output grid 0, dt, 2 dt, ..., ending exactly at t_end.

    If dt does not divide t_end, a shorter final step closes the gap.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0 (got {dt!r})")
    if not t_end > 0:
        raise ValueError(f"t_end must be > 0 (got {t_end!r})")
    n = int(np.floor(t_end / dt + 1e-9))
    times = dt * np.arange(n + 1, dtype=float)
    if t_end - times[-1] > 1e-12 * max(1.0, t_end):
        times = np.append(times, t_end)
    else:
        times[-1] = t_end
    return times
