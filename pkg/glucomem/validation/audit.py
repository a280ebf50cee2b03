"""Invariant audit for steady solution candidates."""

from __future__ import annotations

import logging

import numpy as np

from ..models import AuditResult, ConcentrationField, DimensionlessParams

logger = logging.getLogger(__name__)

# Slack for monotonicity and the upper bound; differences below it are round-off.
_NOISE = 1e-12


def check_steady_invariants(field: ConcentrationField, p: DimensionlessParams) -> AuditResult:
    """
    Eliminating g between the three steady equations leaves two linear
    identities that any steady solution satisfies pointwise:

        γ_S1·u − 2ηγ_E1·v = γ_S1 − 2ηγ_E1
        γ_S1·u +  μγ_E1·w = γ_S1
    """
    u, v, w = field.u, field.v, field.w
    two_eta_g = 2.0 * p.eta * p.gamma_E1
    coupling_uv = float(np.max(np.abs(p.gamma_S1 * u - two_eta_g * v - (p.gamma_S1 - two_eta_g))))
    coupling_uw = float(np.max(np.abs(p.gamma_S1 * u + p.mu * p.gamma_E1 * w - p.gamma_S1)))
    boundary = float(max(abs(u[-1] - 1.0), abs(v[-1] - 1.0), abs(w[-1])))

    monotone = {
        "u": bool(np.all(np.diff(u) >= -_NOISE)),
        "v": bool(np.all(np.diff(v) >= -_NOISE)),
        "w": bool(np.all(np.diff(w) <= _NOISE)),
    }
    negative = [name for name, c in (("u", u), ("v", v), ("w", w)) if np.min(c) < 0]
    above_one = [name for name, c in (("u", u), ("v", v)) if np.max(c) > 1.0 + _NOISE]

    if negative:
        logger.warning("negative concentration in %s (%s)", ", ".join(negative), p.describe())

    return AuditResult(
        coupling_uv=coupling_uv,
        coupling_uw=coupling_uw,
        boundary_violation=boundary,
        monotone=monotone,
        negative=negative,
        above_one=above_one,
    )
