"""
Steady-state validation tables: numerical profile against the two closed forms
at X = 0, 0.2, ..., 1, one report per scenario.

Deviations are fractions (0.0053 means 0.53 %).
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

from ..closed_form import agm_profiles, closed_form_coefficients, steady_u, steady_v, steady_w
from ..errors import ContractError, NumericError
from ..models import (
    DimensionlessParams, ErrorReport, ErrorRow, Grid, SolverConfig, Species,
)
from ..solver import solve_steady

logger = logging.getLogger(__name__)

TABLE_X: tuple[float, ...] = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Map in input order, on a thread pool when workers > 1."""
    items = list(items)
    if workers < 1:
        raise ContractError("workers must be at least 1")
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ─────────────────────────────────────────────
# Scenario definitions
# ─────────────────────────────────────────────

_QUALITATIVE = "qualitative only: eta is not determined for this column; generated with eta=1"

TABLE_SPECIES: dict[int, Species] = {1: Species.U, 2: Species.V, 3: Species.W}


def table_scenarios(table_id: int) -> list[tuple[DimensionlessParams, list[str]]]:
    """(parameters, notes) for every scenario column of a table."""
    if table_id == 1:
        return [(DimensionlessParams(0.01, 1.15, g, 10.0), []) for g in (10.0, 210.0, 350.0)]
    if table_id == 2:
        return [
            (DimensionlessParams(0.01, 1.15, 10.0, s), [] if s == 10.0 else [_QUALITATIVE])
            for s in (10.0, 30.0, 35.0)
        ]
    if table_id == 3:
        return [(DimensionlessParams(0.1, 1.0, 5.0, s), []) for s in (5.0, 20.0, 40.0)]
    raise ContractError(f"table_id must be 1, 2 or 3 (got {table_id!r})")


# ─────────────────────────────────────────────
# Deviations
# ─────────────────────────────────────────────

def relative_deviation(numerical: float, approx: float) -> float:
    """
    |numerical − approx| / |numerical|. Both zero gives 0; a zero numerical
    value with a nonzero approximation gives NaN, which callers flag.
    """
    if numerical == 0:
        return 0.0 if approx == 0 else math.nan
    return abs(numerical - approx) / abs(numerical)


def _mean(values: Sequence[float]) -> float:
    finite = [v for v in values if not math.isnan(v)]
    return sum(finite) / len(finite) if finite else math.nan


def _closed_form_columns(species: Species, p: DimensionlessParams, X: list[float]):
    coeffs = closed_form_coefficients(p)
    if species is Species.U:
        vim = steady_u(X, coeffs)
    elif species is Species.V:
        vim = steady_v(X, p, coeffs)
    else:
        vim = steady_w(X, p, coeffs)
    agm = agm_profiles(X, p, coeffs)[list(Species).index(species)]
    return vim, agm


def _scenario_report(
    table_id: int,
    species: Species,
    p: DimensionlessParams,
    notes: list[str],
    grid: Grid,
    cfg: SolverConfig,
) -> ErrorReport:
    try:
        numerical = solve_steady(p, grid, cfg).field.species(species)
    except NumericError as e:
        raise NumericError(
            f"table {table_id} scenario [{p.describe()}]: {e}",
            last_iterate=e.last_iterate,
            trace=e.trace,
        ) from e

    X = list(TABLE_X)
    vim, agm = _closed_form_columns(species, p, X)
    rows = []
    for j, x in enumerate(X):
        num = float(numerical[grid.index_of(x)])
        dev_vim = relative_deviation(num, float(vim[j]))
        dev_agm = relative_deviation(num, float(agm[j]))
        flagged = math.isnan(dev_vim) or math.isnan(dev_agm)
        if flagged:
            logger.warning("table %d X=%g: numerical value is 0, deviation undefined", table_id, x)
        rows.append(ErrorRow(x, num, float(vim[j]), float(agm[j]), dev_vim, dev_agm, flagged))

    return ErrorReport(
        table_id=table_id,
        species=species,
        scenario=p,
        rows=rows,
        mean_dev_vim=_mean([r.dev_vim for r in rows]),
        mean_dev_agm=_mean([r.dev_agm for r in rows]),
        notes=list(notes),
    )


def reproduce_table(
    table_id: int,
    grid: Grid | None = None,
    cfg: SolverConfig | None = None,
    workers: int = 1,
) -> list[ErrorReport]:
    """One ErrorReport per scenario column, in the table's column order."""
    scenarios = table_scenarios(table_id)
    grid = grid or Grid()
    cfg = cfg or SolverConfig()
    species = TABLE_SPECIES[table_id]
    return ordered_map(
        lambda item: _scenario_report(table_id, species, item[0], item[1], grid, cfg),
        scenarios,
        workers,
    )


def max_mean_errors(reports: Sequence[ErrorReport]) -> dict[str, float]:
    """Largest per-scenario mean deviation in each closed-form column."""
    if not reports:
        raise ContractError("no reports given")
    return {
        "vim": max(r.mean_dev_vim for r in reports),
        "agm": max(r.mean_dev_agm for r in reports),
    }
