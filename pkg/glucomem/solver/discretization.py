"""
Method-of-lines discretization of the reduced system

    ∂u/∂τ =     u_XX − γ_E1·g(u, v)
    ∂v/∂τ = η · v_XX − (γ_S1/2)·g(u, v)
    ∂w/∂τ = μ · w_XX + γ_S1·g(u, v)

on a uniform grid. Second-order central differences in the interior, a
ghost-point reflection (c_{-1} = c_1) for the zero-flux midplane at X = 0, and
a pinned Dirichlet node at X = 1 whose time derivative is zero.

Unknowns are interleaved per node (u_i, v_i, w_i) so the Jacobian has
half-bandwidth 3.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError
from ..kinetics import rate_unchecked, reaction_term_partials
from ..models import STOICHIOMETRY, ConcentrationField, DimensionlessParams, Grid
from .banded import BandedMatrix

HALF_BANDWIDTH = 3
BOUNDARY_VALUES = np.array([1.0, 1.0, 0.0])   # u, v, w at X = 1


def _coefficients(p: DimensionlessParams) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    """(diffusivities, reaction coefficients) per species."""
    diffusivities = (1.0, p.eta, p.mu)
    reactions = (
        STOICHIOMETRY.nu_g * p.gamma_E1,
        STOICHIOMETRY.nu_ox * p.gamma_S1,
        STOICHIOMETRY.nu_a * p.gamma_S1,
    )
    return diffusivities, reactions


def _laplacian(c: np.ndarray, h2: float) -> np.ndarray:
    lap = np.empty_like(c)
    lap[0] = 2.0 * (c[1] - c[0]) / h2
    lap[1:-1] = (c[:-2] - 2.0 * c[1:-1] + c[2:]) / h2
    lap[-1] = 0.0
    return lap


def rhs_arrays(
    u: np.ndarray, v: np.ndarray, w: np.ndarray, p: DimensionlessParams, h: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    h2 = h * h
    (d_u, d_v, d_w), (c_u, c_v, c_w) = _coefficients(p)
    g = rate_unchecked(u, v, p.alpha, p.beta)
    du = d_u * _laplacian(u, h2) + c_u * g
    dv = d_v * _laplacian(v, h2) + c_v * g
    dw = d_w * _laplacian(w, h2) + c_w * g
    du[-1] = dv[-1] = dw[-1] = 0.0
    return du, dv, dw


def semidiscrete_rhs(
    field: ConcentrationField, p: DimensionlessParams, grid: Grid,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-node time derivatives (du/dτ, dv/dτ, dw/dτ)."""
    if field.grid.n != grid.n:
        raise ContractError(f"field has {field.grid.n} points, grid has {grid.n}")
    return rhs_arrays(field.u, field.v, field.w, p, grid.h)


def rhs_vector(x: np.ndarray, p: DimensionlessParams, grid: Grid) -> np.ndarray:
    block = x.reshape(grid.n, 3)
    du, dv, dw = rhs_arrays(block[:, 0], block[:, 1], block[:, 2], p, grid.h)
    return np.column_stack((du, dv, dw)).ravel()


def rhs_norm(field: ConcentrationField, p: DimensionlessParams) -> float:
    du, dv, dw = semidiscrete_rhs(field, p, field.grid)
    return float(max(np.max(np.abs(du)), np.max(np.abs(dv)), np.max(np.abs(dw))))


def jacobian_vector(x: np.ndarray, p: DimensionlessParams, grid: Grid) -> BandedMatrix:
    """Analytic Jacobian of rhs_vector; the X = 1 rows are zero."""
    n = grid.n
    h2 = grid.h ** 2
    block = x.reshape(n, 3)
    (d_u, d_v, d_w), (c_u, c_v, c_w) = _coefficients(p)
    dg_du, dg_dv = reaction_term_partials(block[:-1, 0], block[:-1, 1], p.alpha, p.beta)

    u = HALF_BANDWIDTH
    ab = np.zeros((2 * HALF_BANDWIDTH + 1, 3 * n))
    nodes = np.arange(n - 1)

    for s, (dc, reaction_diag) in enumerate((
        (d_u, c_u * dg_du),
        (d_v, c_v * dg_dv),
        (d_w, np.zeros(n - 1)),
    )):
        rows = 3 * nodes + s
        ab[u, rows] = -2.0 * dc / h2 + reaction_diag
        right = np.full(n - 1, dc / h2)
        right[0] = 2.0 * dc / h2            # ghost-point reflection at X = 0
        ab[u - 3, rows + 3] = right
        ab[u + 3, rows[1:] - 3] = dc / h2

    # Reaction coupling inside a node: ab[u + row - col, col]
    ab[u - 1, 3 * nodes + 1] = c_u * dg_dv   # (u_i, v_i)
    ab[u + 1, 3 * nodes] = c_v * dg_du       # (v_i, u_i)
    ab[u + 2, 3 * nodes] = c_w * dg_du       # (w_i, u_i)
    ab[u + 1, 3 * nodes + 1] = c_w * dg_dv   # (w_i, v_i)

    return BandedMatrix(ab, HALF_BANDWIDTH, HALF_BANDWIDTH)


def jacobian_banded(field: ConcentrationField, p: DimensionlessParams, grid: Grid) -> BandedMatrix:
    """Analytic Jacobian of semidiscrete_rhs in node-interleaved order."""
    if field.grid.n != grid.n:
        raise ContractError(f"field has {field.grid.n} points, grid has {grid.n}")
    return jacobian_vector(field.as_vector(), p, grid)


def pin_boundary(x: np.ndarray) -> np.ndarray:
    x[-3:] = BOUNDARY_VALUES
    return x
