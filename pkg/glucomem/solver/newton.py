"""
Damped Newton iteration over banded Jacobians.

Shared by the implicit Euler step and the steady solve. The step length is
halved until the residual max-norm decreases; running below damping_min or past
the iteration cap raises NewtonConvergenceError carrying the iterate and the
per-iteration trace.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import NewtonConvergenceError
from .banded import BandedMatrix, banded_solve

logger = logging.getLogger(__name__)

# Residual evaluations cannot drop below a few ulps of ‖J‖·‖x‖; fine grids hit
# this before newton_tol.
_ROUNDOFF = 16.0 * np.finfo(float).eps


@dataclass
class NewtonOutcome:
    x: np.ndarray
    residual_norm: float
    iterations: int
    trace: list[dict] = field(default_factory=list)


def _norm(v: np.ndarray) -> float:
    return float(np.max(np.abs(v)))


def damped_newton(
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], BandedMatrix],
    x0: np.ndarray,
    *,
    tol: float,
    max_iters: int,
    damping_min: float,
    label: str = "newton",
) -> NewtonOutcome:
    x = np.array(x0, dtype=float)
    F = residual(x)
    norm = _norm(F)
    trace: list[dict] = []
    floor = 0.0

    for iteration in range(1, max_iters + 1):
        J = jacobian(x)
        floor = _ROUNDOFF * J.norm_inf() * max(1.0, _norm(x))
        if norm < max(tol, floor):
            return NewtonOutcome(x, norm, iteration - 1, trace)

        dx = banded_solve(J, -F)
        lam = 1.0
        while True:
            x_try = x + lam * dx
            F_try = residual(x_try)
            norm_try = _norm(F_try)
            if np.isfinite(norm_try) and norm_try < norm:
                break
            lam *= 0.5
            if lam < damping_min:
                trace.append({"iteration": iteration, "residual": norm, "damping": lam})
                raise NewtonConvergenceError(
                    f"{label}: residual did not decrease down to damping {damping_min:g} "
                    f"at iteration {iteration} (‖F‖∞ = {norm:.3e})",
                    last_iterate=x,
                    trace=trace,
                )

        x, F, norm = x_try, F_try, norm_try
        trace.append({"iteration": iteration, "residual": norm, "damping": lam})
        logger.debug("%s iter %d: ‖F‖∞=%.3e damping=%g", label, iteration, norm, lam)

    if norm < max(tol, floor):
        return NewtonOutcome(x, norm, max_iters, trace)
    raise NewtonConvergenceError(
        f"{label}: no convergence in {max_iters} iterations (‖F‖∞ = {norm:.3e})",
        last_iterate=x,
        trace=trace,
    )
