"""
Core data models for the membrane transport simulator.

Parameters are frozen dataclasses so a scenario can be shared between worker
threads; array-carrying types (fields, reports) serialize through to_dict()
for CSV/JSON emission.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ContractError, DomainError


# ─────────────────────────────────────────────
# Enumerations
# ─────────────────────────────────────────────

class Species(str, Enum):
    """Dimensionless concentrations: glucose, oxygen, gluconic acid."""
    U = "u"
    V = "v"
    W = "w"


class ClosedFormMethod(str, Enum):
    AGM           = "agm"
    VIM_STEADY    = "vim-steady"
    VIM_TRANSIENT = "vim-transient"


class Functional(str, Enum):
    """Scalar summary of a steady profile used by the sensitivity analysis."""
    CENTER = "center"   # value at X = 0
    MEAN   = "mean"     # trapezoidal mean over [0, 1]


# ─────────────────────────────────────────────
# Physical and reduced parameters
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class Stoichiometry:
    nu_g: float = -1.0
    nu_ox: float = -0.5
    nu_a: float = 1.0


STOICHIOMETRY = Stoichiometry()


@dataclass(frozen=True)
class DimensionalParams:
    """Physical constants of the membrane system (mol/cm³, cm²/s, mol/(s·cm³), cm)."""
    C_g_star: float
    C_ox_star: float
    D_g: float
    D_ox: float
    D_a: float
    K_g: float
    K_ox: float
    V_max: float
    l: float

    def validate(self) -> None:
        """Raise DomainError naming the first non-positive field."""
        for name, value in asdict(self).items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive (got {value!r})")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> DimensionalParams:
        return cls(**{name: float(d[name]) for name in cls.__dataclass_fields__})


# JSON spelling ↔ attribute name for the reduced parameters
_DIMENSIONLESS_KEYS: dict[str, str] = {
    "alpha":   "alpha",
    "beta":    "beta",
    "gammaE1": "gamma_E1",
    "gammaS1": "gamma_S1",
    "eta":     "eta",
    "mu":      "mu",
}
_REQUIRED_KEYS = ("alpha", "beta", "gammaE1", "gammaS1")


@dataclass(frozen=True)
class DimensionlessParams:
    """The six reduced groups that drive every solver."""
    alpha: float
    beta: float
    gamma_E1: float
    gamma_S1: float
    eta: float = 1.0
    mu: float = 1.0

    def __post_init__(self) -> None:
        for key, attr in _DIMENSIONLESS_KEYS.items():
            value = getattr(self, attr)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise DomainError(f"{key} must be a finite number (got {value!r})")
            if attr.startswith("gamma"):
                if value < 0:
                    raise DomainError(f"{key} must be non-negative")
            elif value <= 0:
                raise DomainError(f"{key} must be positive")

    @staticmethod
    def parameter_names() -> list[str]:
        """JSON/CLI spelling of every parameter, in canonical order."""
        return list(_DIMENSIONLESS_KEYS)

    @staticmethod
    def attribute_for(name: str) -> str:
        if name not in _DIMENSIONLESS_KEYS:
            raise ContractError(
                f"Unknown parameter {name!r}. Valid names: {', '.join(_DIMENSIONLESS_KEYS)}"
            )
        return _DIMENSIONLESS_KEYS[name]

    def get(self, name: str) -> float:
        return getattr(self, self.attribute_for(name))

    def with_value(self, name: str, value: float) -> DimensionlessParams:
        """Copy with one parameter (JSON spelling) replaced."""
        values = {attr: getattr(self, attr) for attr in _DIMENSIONLESS_KEYS.values()}
        values[self.attribute_for(name)] = float(value)
        return DimensionlessParams(**values)

    def to_dict(self) -> dict:
        return {key: getattr(self, attr) for key, attr in _DIMENSIONLESS_KEYS.items()}

    def describe(self) -> str:
        return " ".join(f"{k}={v:g}" for k, v in self.to_dict().items())

    @classmethod
    def from_dict(cls, d: dict) -> DimensionlessParams:
        """eta and mu default to 1 when absent."""
        missing = [k for k in _REQUIRED_KEYS if k not in d]
        if missing:
            raise DomainError(f"{missing[0]} is required (missing: {', '.join(missing)})")
        return cls(**{attr: d[key] for key, attr in _DIMENSIONLESS_KEYS.items() if key in d})


@dataclass(frozen=True)
class ClosedFormCoefficients:
    """k, its root, the AGM constant m, and the oxygen / gluconic-acid amplitudes."""
    k: float
    sqrt_k: float
    m: float
    A_v: Optional[float]   # γ_S1/(2ηγ_E1); None when γ_E1 = 0
    B_w: Optional[float]   # γ_S1/(μγ_E1);  None when γ_E1 = 0

    def to_dict(self) -> dict:
        return asdict(self)


# ─────────────────────────────────────────────
# Discretization and state
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class Grid:
    """Uniform grid on the reduced half-thickness [0, 1]."""
    n: int = 201

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 3:
            raise ContractError(f"grid needs at least 3 points (got {self.n!r})")

    @property
    def h(self) -> float:
        return 1.0 / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n)

    def index_of(self, X: float) -> int:
        """Index of the grid node at position X; X must coincide with a node."""
        i = int(round(X / self.h))
        if not 0 <= i < self.n or abs(i * self.h - X) > 1e-9:
            raise ContractError(f"X={X} is not a node of a {self.n}-point grid")
        return i


@dataclass(frozen=True, eq=False)
class ConcentrationField:
    """u, v, w sampled on a grid at dimensionless time tau."""
    grid: Grid
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    tau: float = 0.0

    def __post_init__(self) -> None:
        for name in ("u", "v", "w"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (self.grid.n,):
                raise ContractError(
                    f"{name} has shape {arr.shape}, grid has {self.grid.n} points"
                )
            object.__setattr__(self, name, arr)

    def species(self, s: Species | str) -> np.ndarray:
        return getattr(self, Species(s).value)

    def is_boundary_consistent(self, tol: float = 0.0) -> bool:
        return (
            abs(self.u[-1] - 1.0) <= tol
            and abs(self.v[-1] - 1.0) <= tol
            and abs(self.w[-1]) <= tol
        )

    def as_vector(self) -> np.ndarray:
        """Node-interleaved unknown vector (u_0, v_0, w_0, u_1, ...)."""
        return np.column_stack((self.u, self.v, self.w)).ravel()

    @classmethod
    def from_vector(cls, grid: Grid, x: np.ndarray, tau: float = 0.0) -> ConcentrationField:
        if x.shape != (3 * grid.n,):
            raise ContractError(f"state vector has shape {x.shape}, expected ({3 * grid.n},)")
        block = x.reshape(grid.n, 3)
        return cls(grid, block[:, 0].copy(), block[:, 1].copy(), block[:, 2].copy(), tau)

    def rows(self) -> list[tuple[float, float, float, float]]:
        return [
            (float(X), float(a), float(b), float(c))
            for X, a, b, c in zip(self.grid.points, self.u, self.v, self.w)
        ]

    def to_dict(self) -> dict:
        return {
            "n": self.grid.n,
            "tau": self.tau,
            "X": self.grid.points.tolist(),
            "u": self.u.tolist(),
            "v": self.v.tolist(),
            "w": self.w.tolist(),
        }


@dataclass(frozen=True)
class SolverConfig:
    dt: float = 1e-3
    newton_tol: float = 1e-9
    newton_max_iters: int = 50
    steady_tol: float = 1e-8
    damping_min: float = 1.0 / 64.0

    def __post_init__(self) -> None:
        for name in ("dt", "newton_tol", "steady_tol", "damping_min"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise DomainError(f"{name} must be positive")
        if self.damping_min > 1:
            raise DomainError("damping_min must not exceed 1")
        if not isinstance(self.newton_max_iters, int) or self.newton_max_iters < 1:
            raise DomainError("newton_max_iters must be a positive integer")

    def describe(self) -> str:
        return (
            f"dt={self.dt:g} newton_tol={self.newton_tol:g} newton_max_iters={self.newton_max_iters} "
            f"steady_tol={self.steady_tol:g} damping_min={self.damping_min:g}"
        )

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class DimensionalProfile:
    """A field mapped back to physical units."""
    x: np.ndarray        # cm
    t: float             # s
    C_g: np.ndarray      # mol/cm³
    C_ox: np.ndarray
    C_a: np.ndarray

    def rows(self) -> list[tuple[float, float, float, float]]:
        return [
            (float(a), float(b), float(c), float(d))
            for a, b, c, d in zip(self.x, self.C_g, self.C_ox, self.C_a)
        ]


# ─────────────────────────────────────────────
# Solver results
# ─────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class SteadyResult:
    field: ConcentrationField
    residual_norm: float
    iterations: int


@dataclass(frozen=True, eq=False)
class TransientResult:
    fields: list[ConcentrationField]
    steady_reached_at: Optional[float]   # τ at which ‖rhs‖∞ < steady_tol, else None
    rhs_norm: float                      # ‖rhs‖∞ of the last computed state


@dataclass(frozen=True)
class ConvergenceReport:
    grid_sizes: tuple[int, ...]
    differences: tuple[float, ...]
    order: Optional[float]
    exact: bool

    def describe(self) -> str:
        if self.exact:
            return "exact"
        return f"{self.order:.3f}" if self.order is not None else "undetermined"


# ─────────────────────────────────────────────
# Validation reports
# ─────────────────────────────────────────────

@dataclass
class ErrorRow:
    X: float
    numerical: float
    vim: float
    agm: float
    dev_vim: float          # fractions, not percent
    dev_agm: float
    flagged: bool = False   # numerical = 0 with a nonzero approximation

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class ErrorReport:
    """One scenario column group of a validation table."""
    table_id: int
    species: Species
    scenario: DimensionlessParams
    rows: list[ErrorRow]
    mean_dev_vim: float
    mean_dev_agm: float
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "table_id": self.table_id,
            "species": self.species.value,
            "scenario": self.scenario.to_dict(),
            "rows": [r.to_dict() for r in self.rows],
            "mean_dev_vim": self.mean_dev_vim,
            "mean_dev_agm": self.mean_dev_agm,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)


@dataclass
class SensitivityReport:
    target: Species
    shares: dict[str, float]            # percent, sums to 100 unless flagged
    sensitivities: dict[str, float]     # normalized local sensitivities |S_q|
    delta: float
    functional: Functional
    failed: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "target": self.target.value,
            "shares": dict(self.shares),
            "sensitivities": dict(self.sensitivities),
            "delta": self.delta,
            "functional": self.functional.value,
            "failed": list(self.failed),
            "notes": list(self.notes),
        }


@dataclass
class AuditResult:
    coupling_uv: float                   # max |γ_S1·u − 2ηγ_E1·v − (γ_S1 − 2ηγ_E1)|
    coupling_uw: float                   # max |γ_S1·u + μγ_E1·w − γ_S1|
    boundary_violation: float            # max deviation from u=v=1, w=0 at X=1
    monotone: dict[str, bool]
    negative: list[str] = field(default_factory=list)
    above_one: list[str] = field(default_factory=list)

    def ok(self, tol: float = 1e-8) -> bool:
        return (
            self.coupling_uv <= tol
            and self.coupling_uw <= tol
            and self.boundary_violation <= tol
            and all(self.monotone.values())
            and not self.negative
        )

    def to_dict(self) -> dict:
        return asdict(self)


# ─────────────────────────────────────────────
# Tool result wrapper
# ─────────────────────────────────────────────

@dataclass
class ToolResult:
    """
    Wrapper returned by every runner entry point. The CLI only ever sees this,
    so it must say what happened and, on failure, what kind of failure it was.
    """
    success: bool
    data: Optional[dict] = None
    error: Optional[str] = None
    next_action_hint: Optional[str] = None
    kind: Optional[str] = None   # "config" | "numeric" | "io" on failure

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)
