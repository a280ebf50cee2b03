"""
Parameter sweeps over the closed-form steady profiles, and the same sweep with
the numerical steady profile alongside.
"""

from __future__ import annotations

from collections import OrderedDict
from typing import Sequence

import numpy as np

from ..closed_form import closed_form_coefficients, steady_u, steady_v, steady_w
from ..errors import ContractError
from ..models import DimensionlessParams, Grid, SolverConfig, Species
from ..solver import solve_steady
from .tables import ordered_map

THIELE_OVERRIDE = "k"


def sweep_parameter_names() -> list[str]:
    return DimensionlessParams.parameter_names() + [THIELE_OVERRIDE]


def _check_sweep(param: str, values: Sequence[float], allowed: list[str]) -> list[float]:
    if param not in allowed:
        raise ContractError(f"Unknown parameter {param!r}. Valid names: {', '.join(allowed)}")
    values = [float(v) for v in values]
    if not values:
        raise ContractError("value list must not be empty")
    return values


def _steady_profile(species: Species, X: np.ndarray, p: DimensionlessParams, k: float | None = None) -> np.ndarray:
    coeffs = closed_form_coefficients(p, k=k)
    if species is Species.U:
        return np.asarray(steady_u(X, coeffs))
    if species is Species.V:
        return np.asarray(steady_v(X, p, coeffs))
    return np.asarray(steady_w(X, p, coeffs))


def profile_sweep(
    species: Species | str,
    param: str,
    values: Sequence[float],
    fixed: DimensionlessParams,
    resolution: int = 101,
) -> list[tuple[float, float, float]]:
    """
    Rows (value, X, concentration), one series per parameter value, X on a
    uniform grid of `resolution` points. param "k" sets the Thiele group
    directly instead of deriving it from gammaE1, alpha and beta.
    """
    species = Species(species)
    values = _check_sweep(param, values, sweep_parameter_names())
    X = Grid(resolution).points
    rows: list[tuple[float, float, float]] = []
    for value in values:
        if param == THIELE_OVERRIDE:
            profile = _steady_profile(species, X, fixed, k=value)
        else:
            profile = _steady_profile(species, X, fixed.with_value(param, value))
        rows.extend((value, float(x), float(c)) for x, c in zip(X, profile))
    return rows


def comparison_sweep(
    species: Species | str,
    param: str,
    values: Sequence[float],
    base: DimensionlessParams,
    grid: Grid | None = None,
    cfg: SolverConfig | None = None,
    workers: int = 1,
) -> list[tuple[float, float, float, float]]:
    """Rows (value, X, closed_form, numerical) on the solver grid."""
    species = Species(species)
    values = _check_sweep(param, values, DimensionlessParams.parameter_names())
    grid = grid or Grid()
    cfg = cfg or SolverConfig()
    X = grid.points

    def one(value: float) -> list[tuple[float, float, float, float]]:
        p = base.with_value(param, value)
        closed = _steady_profile(species, X, p)
        numerical = solve_steady(p, grid, cfg).field.species(species)
        return [(value, float(x), float(a), float(b)) for x, a, b in zip(X, closed, numerical)]

    return [row for block in ordered_map(one, values, workers) for row in block]


def series_by_value(rows: Sequence[tuple]) -> "OrderedDict[float, tuple[list[float], list[float]]]":
    """Group (value, X, y, ...) rows into value → (X list, y list), keeping row order."""
    series: OrderedDict[float, tuple[list[float], list[float]]] = OrderedDict()
    for row in rows:
        xs, ys = series.setdefault(row[0], ([], []))
        xs.append(row[1])
        ys.append(row[2])
    return series
