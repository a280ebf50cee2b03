"""Observed spatial order from steady solves on nested grids."""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from ..errors import ContractError
from ..models import ConcentrationField, ConvergenceReport, DimensionlessParams, Grid, SolverConfig
from .steady import solve_steady

logger = logging.getLogger(__name__)

# Differences below this are round-off: the discretization is exact for the problem.
EXACT_THRESHOLD = 1e-13


def _difference(fine: ConcentrationField, coarse: ConcentrationField) -> float:
    """Max-norm difference over all species at the coarse grid's nodes."""
    stride = (fine.grid.n - 1) // (coarse.grid.n - 1)
    return float(max(
        np.max(np.abs(fine.u[::stride] - coarse.u)),
        np.max(np.abs(fine.v[::stride] - coarse.v)),
        np.max(np.abs(fine.w[::stride] - coarse.w)),
    ))


def estimate_convergence_order(
    p: DimensionlessParams,
    cfg: SolverConfig | None = None,
    grid_sizes: Sequence[int] = (101, 201, 401),
) -> ConvergenceReport:
    """
    Richardson estimate p = log2(d1/d2) where d1, d2 are the coarse/medium and
    medium/fine differences. Grids must nest as n, 2n−1, 4n−3, ...; with more
    than three grids the order comes from the finest triplet.
    """
    sizes = tuple(int(n) for n in grid_sizes)
    if len(sizes) < 3:
        raise ContractError(f"need at least 3 nested grids, got {len(sizes)}")
    for coarse, fine in zip(sizes, sizes[1:]):
        if fine != 2 * coarse - 1:
            raise ContractError(f"grids must nest as n, 2n-1, ...: {coarse} → {fine}")

    cfg = cfg or SolverConfig()
    fields = [solve_steady(p, Grid(n), cfg).field for n in sizes]
    differences = tuple(_difference(f, c) for c, f in zip(fields, fields[1:]))

    d1, d2 = differences[-2], differences[-1]
    if d1 < EXACT_THRESHOLD and d2 < EXACT_THRESHOLD:
        report = ConvergenceReport(sizes, differences, None, True)
    elif d2 < EXACT_THRESHOLD or d1 < EXACT_THRESHOLD:
        report = ConvergenceReport(sizes, differences, None, False)
    else:
        report = ConvergenceReport(sizes, differences, math.log2(d1 / d2), False)
    logger.info("observed order on grids %s: %s", sizes, report.describe())
    return report
