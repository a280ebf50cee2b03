"""
Normalized local sensitivities of a steady profile summary.

    S_q = |(f(q(1+δ)) − f(q(1−δ))) / (2δ·f(q))|

shares are 100·S_q / ΣS_q. Parameters that do not enter the target's steady
equations get share 0 without a solve.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.integrate import trapezoid

from ..errors import DomainError, NumericError
from ..models import (
    ConcentrationField, DimensionlessParams, Functional, Grid, SensitivityReport, SolverConfig, Species,
)
from ..solver import solve_steady
from .tables import ordered_map

logger = logging.getLogger(__name__)

# Steady u and v never see the gluconic-acid diffusivity ratio.
STRUCTURAL_ZEROS: dict[Species, frozenset[str]] = {
    Species.U: frozenset({"mu"}),
    Species.V: frozenset({"mu"}),
    Species.W: frozenset(),
}


def evaluate_functional(field: ConcentrationField, target: Species, functional: Functional) -> float:
    c = field.species(target)
    if functional is Functional.CENTER:
        return float(c[0])
    return float(trapezoid(c, field.grid.points))


def sensitivity_analysis(
    target: Species | str,
    p: DimensionlessParams,
    delta: float = 0.01,
    functional: Functional | str = Functional.CENTER,
    grid: Grid | None = None,
    cfg: SolverConfig | None = None,
    workers: int = 1,
) -> SensitivityReport:
    target = Species(target)
    functional = Functional(functional)
    if not (0 < delta <= 0.1):
        raise DomainError("delta must lie in (0, 0.1]")
    grid = grid or Grid()
    cfg = cfg or SolverConfig()

    def f(params: DimensionlessParams) -> float:
        return evaluate_functional(solve_steady(params, grid, cfg).field, target, functional)

    f0 = f(p)
    if f0 == 0:
        raise DomainError(f"{target.value} {functional.value} is 0; normalized sensitivity is undefined")

    notes: list[str] = []
    sensitivities: dict[str, float] = {}
    active: list[str] = []
    for name in p.parameter_names():
        if name in STRUCTURAL_ZEROS[target]:
            sensitivities[name] = 0.0
        elif p.get(name) == 0:
            sensitivities[name] = 0.0
            notes.append(f"{name}=0: relative perturbation undefined, share set to 0")
        else:
            active.append(name)

    def perturbed(job: tuple[str, float]) -> float | None:
        name, sign = job
        try:
            return f(p.with_value(name, p.get(name) * (1.0 + sign * delta)))
        except (NumericError, DomainError) as e:
            logger.warning("sensitivity: perturbed solve for %s failed: %s", name, e)
            return None

    jobs = [(name, sign) for name in active for sign in (1.0, -1.0)]
    results = ordered_map(perturbed, jobs, workers)

    failed: list[str] = []
    for i, name in enumerate(active):
        plus, minus = results[2 * i], results[2 * i + 1]
        if plus is None or minus is None:
            failed.append(name)
            sensitivities[name] = float("nan")
        else:
            sensitivities[name] = abs((plus - minus) / (2.0 * delta * f0))

    total = float(np.sum([s for n, s in sensitivities.items() if n not in failed]))
    shares: dict[str, float] = {}
    for name in p.parameter_names():
        if name in failed or total == 0:
            shares[name] = 0.0
        else:
            shares[name] = 100.0 * sensitivities[name] / total
    if total == 0:
        notes.append("all sensitivities vanish; shares are not normalized")
    if failed:
        notes.append(f"renormalized over successful parameters; failed: {', '.join(failed)}")

    return SensitivityReport(
        target=target,
        shares=shares,
        sensitivities={n: sensitivities[n] for n in p.parameter_names()},
        delta=delta,
        functional=functional,
        failed=failed,
        notes=notes,
    )
