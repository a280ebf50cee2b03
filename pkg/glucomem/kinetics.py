"""
Michaelis–Menten kinetics and the dimensional ↔ dimensionless transform.

The two-substrate rate law, written in reduced form, is

    g(u, v) = u·v / (u·v + v/α + u/β)

with g(0, 0) := 0. Every solver in the package goes through reaction_term or
its vectorized partials below; nothing else evaluates the rate law.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .models import (
    ConcentrationField, DimensionalParams, DimensionalProfile, DimensionlessParams,
)


# ─────────────────────────────────────────────
# Parameter transform
# ─────────────────────────────────────────────

def nondimensionalize(p: DimensionalParams) -> DimensionlessParams:
    """Reduce the physical constants to (α, β, γ_E1, γ_S1, η, μ)."""
    p.validate()
    reaction = p.l ** 2 * p.V_max
    return DimensionlessParams(
        alpha=p.C_g_star / p.K_g,
        beta=p.C_ox_star / p.K_ox,
        gamma_E1=reaction / (p.D_g * p.C_g_star),
        gamma_S1=reaction / (p.D_g * p.C_ox_star),
        eta=p.D_ox / p.D_g,
        mu=p.D_a / p.D_g,
    )


def to_dimensional(field: ConcentrationField, p: DimensionalParams) -> DimensionalProfile:
    """Map a reduced field back to cm, seconds and mol/cm³."""
    p.validate()
    return DimensionalProfile(
        x=field.grid.points * p.l,
        t=field.tau * p.l ** 2 / p.D_g,
        C_g=field.u * p.C_g_star,
        C_ox=field.v * p.C_ox_star,
        C_a=field.w * p.C_ox_star,
    )


# ─────────────────────────────────────────────
# Rate laws
# ─────────────────────────────────────────────

def reaction_rate_dimensional(C_g: float, C_ox: float, p: DimensionalParams) -> float:
    """Two-substrate Michaelis–Menten rate in mol/(s·cm³)."""
    if C_g < 0:
        raise DomainError("C_g must be non-negative")
    if C_ox < 0:
        raise DomainError("C_ox must be non-negative")
    numerator = p.V_max * C_g * C_ox
    if numerator == 0:
        return 0.0
    return numerator / (C_ox * (p.K_g + C_g) + C_g * p.K_ox)


def reaction_term(u, v, alpha: float, beta: float):
    """
    Reduced rate g(u, v). Scalars return a float; arrays are evaluated pointwise.
    Negative concentrations are outside the domain.
    """
    u_arr = np.asarray(u, dtype=float)
    v_arr = np.asarray(v, dtype=float)
    if np.any(u_arr < 0):
        raise DomainError("u must be non-negative")
    if np.any(v_arr < 0):
        raise DomainError("v must be non-negative")
    g = _rate(u_arr, v_arr, alpha, beta)
    return float(g) if g.ndim == 0 else g


def reaction_term_partials(u, v, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """
    (∂g/∂u, ∂g/∂v) = ((v²/α)/D², (u²/β)/D²) with D = uv + v/α + u/β.
    Points where D ≤ 0 contribute zero.
    """
    u_arr = np.asarray(u, dtype=float)
    v_arr = np.asarray(v, dtype=float)
    denom = u_arr * v_arr + v_arr / alpha + u_arr / beta
    live = denom > 0
    d2 = np.where(live, denom, 1.0) ** 2
    dg_du = np.where(live, (v_arr ** 2 / alpha) / d2, 0.0)
    dg_dv = np.where(live, (u_arr ** 2 / beta) / d2, 0.0)
    return dg_du, dg_dv


def _rate(u: np.ndarray, v: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    # Unchecked vectorized g; the solver calls this on Newton iterates, which may
    # briefly leave the nonnegative orthant. D ≤ 0 maps to 0.
    numerator = u * v
    denom = numerator + v / alpha + u / beta
    live = denom > 0
    return np.where(live, numerator / np.where(live, denom, 1.0), 0.0)


def rate_unchecked(u: np.ndarray, v: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    return _rate(np.asarray(u, dtype=float), np.asarray(v, dtype=float), alpha, beta)


# ─────────────────────────────────────────────
# Initial condition
# ─────────────────────────────────────────────

def cosh_ratio(X: np.ndarray, root: float) -> np.ndarray:
    """cosh(root·X)/cosh(root), pinned to exactly 1 at X = 1."""
    ratio = np.cosh(root * X) / np.cosh(root)
    return np.where(X == 1.0, 1.0, ratio)


def initial_profile(X):
    """Cosh initial condition: u = v = cosh(X)/cosh(1), w = 1 − u."""
    X_arr = np.asarray(X, dtype=float)
    if np.any(X_arr < 0) or np.any(X_arr > 1):
        raise DomainError("X must lie in [0, 1]")
    shape = cosh_ratio(X_arr, 1.0)
    if shape.ndim == 0:
        s = float(shape)
        return s, s, 1.0 - s
    return shape, shape.copy(), 1.0 - shape
