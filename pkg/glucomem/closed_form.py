"""
Closed-form approximations for the membrane profiles.

Two families:

  - first-order variational-iteration expressions for short times (vim_*),
    valid only near τ = 0 and honoring the X = 1 boundary only at τ = 0;
  - steady profiles built on cosh(√k·X)/cosh(√k). The trial-solution route
    (A·sinh(mX) + B·cosh(mX), constants fixed at the boundaries, m from the
    residual at X = 1) lands on the same expression with m = √k; agm_m solves
    for m numerically anyway so the two columns of a validation table are
    computed independently.

The gluconic-acid profile is w = B_w·(1 − cosh(√kX)/cosh(√k)), the form that
satisfies w(1) = 0.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import root_scalar

from .errors import DomainError, RootFindingError
from .kinetics import cosh_ratio, reaction_term
from .models import (
    ClosedFormCoefficients, ClosedFormMethod, ConcentrationField, DimensionlessParams, Grid,
)


_COSH_1 = math.cosh(1.0)


def _check_X(X) -> np.ndarray:
    X_arr = np.asarray(X, dtype=float)
    if np.any(X_arr < 0) or np.any(X_arr > 1):
        raise DomainError("X must lie in [0, 1]")
    return X_arr


def _check_tau(tau: float) -> None:
    if tau < 0:
        raise DomainError("tau must be non-negative")


def _out(arr: np.ndarray):
    return float(arr) if arr.ndim == 0 else arr


# ─────────────────────────────────────────────
# Coefficients
# ─────────────────────────────────────────────

def thiele_k(gamma_E1: float, alpha: float, beta: float) -> float:
    """Linearized Thiele group k = γ_E1 / (1 + 1/α + 1/β)."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if beta <= 0:
        raise DomainError("beta must be positive")
    if gamma_E1 < 0:
        raise DomainError("gammaE1 must be non-negative")
    return gamma_E1 / (1.0 + 1.0 / alpha + 1.0 / beta)


def agm_m(gamma_E1: float, alpha: float, beta: float, tol: float = 1e-12, max_iter: int = 100) -> float:
    """
    Trial-solution constant m.

    Substituting u = cosh(mX)/cosh(m) into the glucose equation and evaluating
    the residual at X = 1 (where u = v = 1) leaves F(m) = m² − γ_E1·g(1, 1).
    The nonnegative root is bracketed by [0, √γ_E1 + 1].
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if beta <= 0:
        raise DomainError("beta must be positive")
    if gamma_E1 < 0:
        raise DomainError("gammaE1 must be non-negative")

    forcing = gamma_E1 * reaction_term(1.0, 1.0, alpha, beta)
    if forcing == 0:
        return 0.0

    def residual(m: float) -> float:
        return m * m - forcing

    upper = math.sqrt(gamma_E1) + 1.0
    try:
        sol = root_scalar(
            residual,
            bracket=(0.0, upper),
            method="brentq",
            xtol=min(tol, 1e-14),
            maxiter=max_iter,
        )
    except (ValueError, RuntimeError) as e:
        raise RootFindingError(f"AGM root iteration failed: {e}", last_iterate=None) from e

    m = float(sol.root)
    # One Newton polish inside the bracket brings |F(m)| to the rounding level of m².
    if sol.converged and m > 0:
        polished = m - residual(m) / (2.0 * m)
        if 0.0 <= polished <= upper and abs(residual(polished)) <= abs(residual(m)):
            m = polished

    if not sol.converged or abs(residual(m)) >= tol:
        raise RootFindingError(
            f"AGM root iteration stalled after {sol.iterations} iterations "
            f"(|F(m)| = {abs(residual(m)):.3e}, tol = {tol:g})",
            last_iterate=m,
        )
    return m


def closed_form_coefficients(
    p: DimensionlessParams,
    k: float | None = None,
    tol: float = 1e-12,
) -> ClosedFormCoefficients:
    """
    Coefficients for the steady profiles. Passing k overrides the Thiele group
    (the "vary k directly" family of profiles); m then equals √k.
    """
    if k is None:
        k = thiele_k(p.gamma_E1, p.alpha, p.beta)
        m = agm_m(p.gamma_E1, p.alpha, p.beta, tol)
    else:
        if k < 0:
            raise DomainError("k must be non-negative")
        m = math.sqrt(k)

    if p.gamma_E1 > 0:
        A_v = p.gamma_S1 / (2.0 * p.eta * p.gamma_E1)
        B_w = p.gamma_S1 / (p.mu * p.gamma_E1)
    else:
        A_v = B_w = None
    return ClosedFormCoefficients(k=k, sqrt_k=math.sqrt(k), m=m, A_v=A_v, B_w=B_w)


# ─────────────────────────────────────────────
# Steady profiles
# ─────────────────────────────────────────────

def _shape(X: np.ndarray, root: float) -> np.ndarray:
    return cosh_ratio(X, root)


def steady_u(X, coeffs: ClosedFormCoefficients):
    return _out(_shape(_check_X(X), coeffs.sqrt_k))


def steady_v(X, p: DimensionlessParams, coeffs: ClosedFormCoefficients):
    X_arr = _check_X(X)
    if p.gamma_E1 == 0 or coeffs.A_v is None:
        raise DomainError("gammaE1 must be positive for the oxygen profile")
    A_v = coeffs.A_v
    return _out(A_v * _shape(X_arr, coeffs.sqrt_k) - (A_v - 1.0))


def steady_w(X, p: DimensionlessParams, coeffs: ClosedFormCoefficients):
    X_arr = _check_X(X)
    if p.gamma_E1 == 0 or coeffs.B_w is None:
        raise DomainError("gammaE1 must be positive for the gluconic-acid profile")
    return _out(coeffs.B_w * (1.0 - _shape(X_arr, coeffs.sqrt_k)))


def agm_profiles(X, p: DimensionlessParams, coeffs: ClosedFormCoefficients):
    """Trial-solution profiles built on m rather than √k."""
    X_arr = _check_X(X)
    if coeffs.A_v is None or coeffs.B_w is None:
        raise DomainError("gammaE1 must be positive for the oxygen and gluconic-acid profiles")
    shape = _shape(X_arr, coeffs.m)
    u = shape
    v = coeffs.A_v * shape - (coeffs.A_v - 1.0)
    w = coeffs.B_w * (1.0 - shape)
    return _out(u), _out(v), _out(w)


# ─────────────────────────────────────────────
# Short-time transient expressions
# ─────────────────────────────────────────────

def _vim_source(X: np.ndarray, p: DimensionlessParams) -> np.ndarray:
    # αβ·cosh(X) / (αβ·cosh(X) + (α + β)·cosh(1)), shared by all three species
    ab = p.alpha * p.beta
    c = np.cosh(X)
    return ab * c / (ab * c + (p.alpha + p.beta) * _COSH_1)


def vim_u(X, tau: float, p: DimensionlessParams):
    X_arr = _check_X(X)
    _check_tau(tau)
    base = cosh_ratio(X_arr, 1.0)
    return _out(base * (1.0 + tau) - p.gamma_E1 * _vim_source(X_arr, p) * tau)


def vim_v(X, tau: float, p: DimensionlessParams):
    X_arr = _check_X(X)
    _check_tau(tau)
    base = cosh_ratio(X_arr, 1.0)
    return _out(base * (1.0 + p.eta * tau) - 0.5 * p.gamma_S1 * _vim_source(X_arr, p) * tau)


def vim_w(X, tau: float, p: DimensionlessParams):
    X_arr = _check_X(X)
    _check_tau(tau)
    base = cosh_ratio(X_arr, 1.0)
    return _out(1.0 - base * (1.0 + p.mu * tau) + p.gamma_S1 * _vim_source(X_arr, p) * tau)


# ─────────────────────────────────────────────
# Grid sampling
# ─────────────────────────────────────────────

def closed_form_field(
    p: DimensionlessParams,
    grid: Grid,
    method: ClosedFormMethod | str = ClosedFormMethod.VIM_STEADY,
    tau: float = 0.0,
    coeffs: ClosedFormCoefficients | None = None,
) -> ConcentrationField:
    """Sample one closed-form family on a grid."""
    method = ClosedFormMethod(method)
    X = grid.points
    if method is ClosedFormMethod.VIM_TRANSIENT:
        return ConcentrationField(grid, vim_u(X, tau, p), vim_v(X, tau, p), vim_w(X, tau, p), tau)

    coeffs = coeffs or closed_form_coefficients(p)
    if method is ClosedFormMethod.AGM:
        u, v, w = agm_profiles(X, p, coeffs)
    else:
        u, v, w = steady_u(X, coeffs), steady_v(X, p, coeffs), steady_w(X, p, coeffs)
    return ConcentrationField(grid, u, v, w, math.inf)
