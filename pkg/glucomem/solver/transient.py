"""
Implicit (backward) Euler time stepping.

Each step solves x − x_old − dt·rhs(x) = 0 by damped Newton with Jacobian
I − dt·∂rhs/∂x. The X = 1 rows of rhs vanish, so the Dirichlet values carry
over from step to step unchanged.
"""

from __future__ import annotations

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..errors import ContractError, DomainError
from ..kinetics import initial_profile
from ..models import ConcentrationField, DimensionlessParams, Grid, SolverConfig, TransientResult
from .banded import BandedMatrix
from .discretization import HALF_BANDWIDTH, jacobian_vector, rhs_vector
from .newton import damped_newton

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_COUNT = 5


def _advance(x_old: np.ndarray, p: DimensionlessParams, grid: Grid, cfg: SolverConfig, dt: float) -> np.ndarray:
    def residual(x: np.ndarray) -> np.ndarray:
        return x - x_old - dt * rhs_vector(x, p, grid)

    def jacobian(x: np.ndarray) -> BandedMatrix:
        J = jacobian_vector(x, p, grid)
        ab = -dt * J.ab
        ab[HALF_BANDWIDTH] += 1.0
        return BandedMatrix(ab, J.lower, J.upper)

    # The step residual is dt·rhs in size, so the tolerance scales with dt;
    # otherwise the state freezes once ‖rhs‖∞ < newton_tol/dt.
    return damped_newton(
        residual,
        jacobian,
        x_old,
        tol=cfg.newton_tol * dt,
        max_iters=cfg.newton_max_iters,
        damping_min=cfg.damping_min,
        label=f"implicit step (dt={dt:g})",
    ).x


def step_implicit(
    field: ConcentrationField,
    p: DimensionlessParams,
    grid: Grid,
    cfg: SolverConfig,
    dt: Optional[float] = None,
) -> ConcentrationField:
    """One backward-Euler step of size dt (cfg.dt by default)."""
    if field.grid.n != grid.n:
        raise ContractError(f"field has {field.grid.n} points, grid has {grid.n}")
    if not field.is_boundary_consistent(tol=1e-12):
        raise ContractError("field is not boundary-consistent at X=1 (need u=v=1, w=0)")
    dt = cfg.dt if dt is None else dt
    if dt <= 0:
        raise DomainError("dt must be positive")
    x = _advance(field.as_vector(), p, grid, cfg, dt)
    return ConcentrationField.from_vector(grid, x, field.tau + dt)


def initial_field(grid: Grid) -> ConcentrationField:
    u, v, w = initial_profile(grid.points)
    return ConcentrationField(grid, u, v, w, 0.0)


def default_samples(tau_end: float, count: int = DEFAULT_SAMPLE_COUNT) -> list[float]:
    return [float(t) for t in np.linspace(0.0, tau_end, count)]


def _max_rhs(x: np.ndarray, p: DimensionlessParams, grid: Grid) -> float:
    return float(np.max(np.abs(rhs_vector(x, p, grid))))


def solve_transient(
    p: DimensionlessParams,
    grid: Grid | None = None,
    cfg: SolverConfig | None = None,
    tau_end: float = 1.0,
    sample_times: Sequence[float] | None = None,
) -> TransientResult:
    """
    Integrate from the cosh initial profile to tau_end, returning the field at
    each sample time. Each interval between samples is covered by equal steps
    no longer than cfg.dt, so samples land exactly on their requested τ.

    Once ‖rhs‖∞ drops below cfg.steady_tol stepping stops; the remaining
    samples repeat that state stamped with their own τ.
    """
    grid = grid or Grid()
    cfg = cfg or SolverConfig()
    if not (isinstance(tau_end, (int, float)) and math.isfinite(tau_end) and tau_end > 0):
        raise DomainError("tau_end must be positive")
    samples = default_samples(tau_end) if sample_times is None else [float(t) for t in sample_times]
    if not samples:
        raise ContractError("at least one sample time is required")
    if any(b < a for a, b in zip(samples, samples[1:])):
        raise ContractError("sample times must be sorted")
    if samples[0] < 0 or samples[-1] > tau_end:
        raise ContractError(f"sample times must lie within [0, {tau_end:g}]")

    start = initial_field(grid)
    x = start.as_vector()
    tau = 0.0
    steady_at: Optional[float] = None
    fields: list[ConcentrationField] = []

    for target in samples:
        if steady_at is None and target > tau:
            steps = max(1, math.ceil((target - tau) / cfg.dt - 1e-9))
            h = (target - tau) / steps
            t0 = tau
            for k in range(1, steps + 1):
                x = _advance(x, p, grid, cfg, h)
                tau = target if k == steps else t0 + k * h
                if _max_rhs(x, p, grid) < cfg.steady_tol:
                    steady_at = tau
                    logger.info("steady state reached at τ=%.6g", tau)
                    break
        if target == 0.0 and steady_at is None and tau == 0.0:
            fields.append(start)
        else:
            fields.append(ConcentrationField.from_vector(grid, x, target))

    return TransientResult(fields, steady_at, _max_rhs(x, p, grid))
