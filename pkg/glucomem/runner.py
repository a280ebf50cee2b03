"""
Orchestration entry points used by the CLI.

Every function returns a ToolResult and never raises for expected failures:
config and contract problems come back with kind="config", solver failures
with kind="numeric", unwritable artifacts with kind="io".
"""

from __future__ import annotations

import functools
import logging
import math
from typing import Callable, Optional, Sequence

from .closed_form import closed_form_coefficients, closed_form_field
from .config import RunConfig
from .emitters import AxesSpec, Comment, Series, emit_csv, emit_svg_polyline
from .errors import ArtifactIOError, ConfigError, ContractError, DomainError, NumericError
from .kinetics import to_dimensional
from .models import ClosedFormMethod, ConcentrationField, Functional, Grid, SolverConfig, Species, ToolResult
from .solver import solve_steady, solve_transient
from .validation import (
    check_steady_invariants, comparison_sweep, max_mean_errors, profile_sweep,
    reproduce_table, sensitivity_analysis, series_by_value,
)

logger = logging.getLogger(__name__)

STEADY_SCHEMA = ("X", "u", "v", "w")
DIMENSIONAL_SCHEMA = ("x", "C_g", "C_ox", "C_a")
TRANSIENT_SCHEMA = ("tau", "X", "u", "v", "w")
TABLE_SCHEMA = ("X", "numerical", "vim", "agm", "dev_vim", "dev_agm")
SENSITIVITY_SCHEMA = ("parameter", "share_percent")
COMPARISON_SCHEMA = ("value", "X", "closed_form", "numerical")


def _guarded(fn: Callable[..., ToolResult]) -> Callable[..., ToolResult]:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs) -> ToolResult:
        try:
            return fn(*args, **kwargs)
        except (ConfigError, DomainError, ContractError) as e:
            return ToolResult(success=False, error=str(e), kind="config",
                              next_action_hint="Check the config file and command-line values.")
        except NumericError as e:
            iterations = len(e.trace)
            hint = f"Solver stopped after {iterations} recorded iteration(s); try a finer dt or a smaller parameter step."
            return ToolResult(success=False, error=str(e), kind="numeric", next_action_hint=hint)
        except ArtifactIOError as e:
            return ToolResult(success=False, error=str(e), kind="io",
                              next_action_hint="Check that the output directory is writable.")
    return wrapper


def _field_series(field: ConcentrationField) -> list[Series]:
    X = field.grid.points
    return [Series(s.value, X, field.species(s)) for s in Species]


# ── steady ────────────────────────────────────────────────────────────────────

@_guarded
def run_steady(
    config: RunConfig,
    out: str,
    plot: Optional[str] = None,
    dimensional: bool = False,
) -> ToolResult:
    if dimensional and config.dimensional is None:
        raise ConfigError("--dimensional requires a \"dimensional\" config block", field="dimensional")

    result = solve_steady(config.params, config.grid, config.solver)
    audit = check_steady_invariants(result.field, config.params)
    provenance = config.provenance("steady")

    if dimensional:
        profile = to_dimensional(result.field, config.dimensional)
        path = emit_csv(profile.rows(), DIMENSIONAL_SCHEMA, out, provenance)
    else:
        path = emit_csv(result.field.rows(), STEADY_SCHEMA, out, provenance)

    plot_path = None
    if plot:
        plot_path = emit_svg_polyline(
            _field_series(result.field),
            AxesSpec("X", "dimensionless concentration", "steady profiles"),
            plot,
            provenance,
        )

    hint = None
    if audit.negative:
        hint = f"Negative concentrations in {', '.join(audit.negative)}: the model breaks down at these parameters."
    return ToolResult(
        success=True,
        data={
            "scenario": config.params.to_dict(),
            "residual_norm": result.residual_norm,
            "iterations": result.iterations,
            "audit": audit.to_dict(),
            "path": str(path),
            "plot": str(plot_path) if plot_path else None,
        },
        next_action_hint=hint,
    )


# ── transient ─────────────────────────────────────────────────────────────────

@_guarded
def run_transient(
    config: RunConfig,
    out: str,
    tau_end: float,
    samples: Optional[Sequence[float]] = None,
    plot: Optional[str] = None,
) -> ToolResult:
    result = solve_transient(config.params, config.grid, config.solver, tau_end, samples)
    rows = [(f.tau, *row) for f in result.fields for row in f.rows()]
    provenance = config.provenance("transient")
    path = emit_csv(rows, TRANSIENT_SCHEMA, out, provenance)

    plot_path = None
    if plot:
        series = [Series(f"u tau={f.tau:g}", f.grid.points, f.u) for f in result.fields]
        plot_path = emit_svg_polyline(series, AxesSpec("X", "u", "glucose over time"), plot, provenance)

    return ToolResult(
        success=True,
        data={
            "scenario": config.params.to_dict(),
            "samples": [f.tau for f in result.fields],
            "steady_reached_at": result.steady_reached_at,
            "rhs_norm": result.rhs_norm,
            "path": str(path),
            "plot": str(plot_path) if plot_path else None,
        },
    )


# ── closed form ───────────────────────────────────────────────────────────────

@_guarded
def run_closed_form(
    config: RunConfig,
    method: ClosedFormMethod | str,
    out: str,
    tau: float = 0.0,
    plot: Optional[str] = None,
) -> ToolResult:
    method = ClosedFormMethod(method)
    coeffs = None
    if method is not ClosedFormMethod.VIM_TRANSIENT:
        coeffs = closed_form_coefficients(config.params)
    field = closed_form_field(config.params, config.grid, method, tau, coeffs)
    provenance = config.provenance(f"closed-form method={method.value}")
    path = emit_csv(field.rows(), STEADY_SCHEMA, out, provenance)

    plot_path = None
    if plot:
        plot_path = emit_svg_polyline(
            _field_series(field), AxesSpec("X", "dimensionless concentration", method.value), plot, provenance,
        )

    data = {
        "scenario": config.params.to_dict(),
        "method": method.value,
        "path": str(path),
        "plot": str(plot_path) if plot_path else None,
    }
    if coeffs is not None:
        data.update(k=coeffs.k, m=coeffs.m)
    if method is ClosedFormMethod.VIM_TRANSIENT:
        data["tau"] = tau
    return ToolResult(success=True, data=data)


# ── tables ────────────────────────────────────────────────────────────────────

@_guarded
def run_tables(
    which: int,
    out: str,
    grid: Optional[Grid] = None,
    cfg: Optional[SolverConfig] = None,
    workers: int = 1,
) -> ToolResult:
    grid = grid or Grid()
    cfg = cfg or SolverConfig()
    reports = reproduce_table(which, grid, cfg, workers)

    rows: list = []
    for report in reports:
        notes = f" ({'; '.join(report.notes)})" if report.notes else ""
        rows.append(Comment(f"scenario species={report.species.value} {report.scenario.describe()}{notes}"))
        rows.extend((r.X, r.numerical, r.vim, r.agm, r.dev_vim, r.dev_agm) for r in report.rows)
        rows.append(("mean", "", "", "", report.mean_dev_vim, report.mean_dev_agm))

    provenance = f"glucomem tables which={which} n={grid.n} {cfg.describe()}"
    path = emit_csv(rows, TABLE_SCHEMA, out, provenance)
    return ToolResult(
        success=True,
        data={
            "table": which,
            "reports": [r.to_dict() for r in reports],
            "max_mean_errors": max_mean_errors(reports),
            "path": str(path),
        },
        next_action_hint="Deviations are fractions: 0.0053 means 0.53 %.",
    )


# ── sweep ─────────────────────────────────────────────────────────────────────

@_guarded
def run_sweep(
    config: RunConfig,
    param: str,
    values: Sequence[float],
    species: Species | str,
    out: str,
    plot: Optional[str] = None,
    numerical: bool = False,
    workers: int = 1,
) -> ToolResult:
    species = Species(species)
    provenance = config.provenance(f"sweep param={param} species={species.value}")
    if numerical:
        rows = comparison_sweep(species, param, values, config.params, config.grid, config.solver, workers)
        schema = COMPARISON_SCHEMA
    else:
        rows = profile_sweep(species, param, values, config.params, resolution=config.n)
        schema = ("value", "X", species.value)
    path = emit_csv(rows, schema, out, provenance)

    plot_path = None
    if plot:
        series = [Series(f"{param}={value:g}", xs, ys) for value, (xs, ys) in series_by_value(rows).items()]
        plot_path = emit_svg_polyline(
            series, AxesSpec("X", species.value, f"{species.value} for varying {param}"), plot, provenance,
        )

    return ToolResult(
        success=True,
        data={
            "param": param,
            "values": [float(v) for v in values],
            "species": species.value,
            "rows": len(rows),
            "path": str(path),
            "plot": str(plot_path) if plot_path else None,
        },
    )


# ── sensitivity ───────────────────────────────────────────────────────────────

@_guarded
def run_sensitivity(
    config: RunConfig,
    target: Species | str,
    out: str,
    delta: float = 0.01,
    functional: Functional | str = Functional.CENTER,
    workers: int = 1,
) -> ToolResult:
    report = sensitivity_analysis(target, config.params, delta, functional, config.grid, config.solver, workers)
    provenance = (
        config.provenance("sensitivity")
        + f" target={report.target.value} delta={report.delta:g} functional={report.functional.value}"
    )
    path = emit_csv(list(report.shares.items()), SENSITIVITY_SCHEMA, out, provenance)

    hint = None
    if report.failed:
        hint = f"Perturbed solves failed for {', '.join(report.failed)}; shares renormalized over the rest."
    total = sum(s for s in report.shares.values() if not math.isnan(s))
    return ToolResult(
        success=True,
        data={**report.to_dict(), "total_percent": total, "path": str(path)},
        next_action_hint=hint,
    )
