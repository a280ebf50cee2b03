"""
Run configuration: a single JSON document.

    {
      "dimensionless": {"alpha": 0.01, "beta": 1.15, "gammaE1": 10, "gammaS1": 10, "eta": 1, "mu": 1},
      "solver":        {"n": 201, "dt": 0.001},
      "output":        {"csv": "out.csv", "svg": "out.svg"}
    }

Exactly one of "dimensionless" / "dimensional" is required. A dimensional block
is reduced through nondimensionalize; the derived groups are what every solver
sees and what provenance lines record.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ConfigError, DomainError
from .kinetics import nondimensionalize
from .models import DimensionalParams, DimensionlessParams, Grid, SolverConfig

_TOP_LEVEL = ("dimensionless", "dimensional", "solver", "output")
_SOLVER_KEYS = ("n", "dt", "newton_tol", "newton_max_iters", "steady_tol", "damping_min")
_OUTPUT_KEYS = ("csv", "svg")


@dataclass
class RunConfig:
    params: DimensionlessParams
    dimensional: Optional[DimensionalParams] = None
    n: int = 201
    solver: SolverConfig = field(default_factory=SolverConfig)
    csv: Optional[str] = None
    svg: Optional[str] = None

    @property
    def grid(self) -> Grid:
        return Grid(self.n)

    def provenance(self, command: str) -> str:
        """One-line record of every setting that determines an artifact."""
        return f"glucomem {command} {self.params.describe()} n={self.n} {self.solver.describe()}"

    def to_dict(self) -> dict:
        d: dict = {"dimensionless": self.params.to_dict()}
        if self.dimensional is not None:
            d["dimensional"] = self.dimensional.to_dict()
        d["solver"] = {"n": self.n, **self.solver.to_dict()}
        d["output"] = {"csv": self.csv, "svg": self.svg}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _block(doc: dict, name: str, allowed: tuple[str, ...] | None) -> dict:
    block = doc.get(name, {})
    if not isinstance(block, dict):
        raise ConfigError(f'"{name}" must be an object', field=name)
    if allowed is not None:
        unknown = sorted(set(block) - set(allowed))
        if unknown:
            raise ConfigError(
                f'unknown key(s) in "{name}": {", ".join(unknown)}', field=f"{name}.{unknown[0]}"
            )
    return block


def _numbers(block: dict, name: str) -> dict:
    for key, value in block.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key} must be a number", field=f"{name}.{key}")
    return block


def _field_of(e: DomainError) -> str:
    return str(e).split(" ", 1)[0]


def parse_config(text: str) -> RunConfig:
    """Validate a JSON config document. All failures raise ConfigError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}",
            line=e.lineno,
            column=e.colno,
        ) from e
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")

    unknown = sorted(set(doc) - set(_TOP_LEVEL))
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(unknown)}", field=unknown[0])

    has_reduced = "dimensionless" in doc
    has_physical = "dimensional" in doc
    if has_reduced == has_physical:
        raise ConfigError(
            'exactly one of "dimensionless" or "dimensional" is required'
            + (" (both given)" if has_reduced else " (neither given)")
        )

    try:
        dimensional = None
        if has_reduced:
            block = _numbers(_block(doc, "dimensionless", tuple(DimensionlessParams.parameter_names())), "dimensionless")
            params = DimensionlessParams.from_dict(block)
        else:
            block = _numbers(_block(doc, "dimensional", tuple(DimensionalParams.__dataclass_fields__)), "dimensional")
            missing = [k for k in DimensionalParams.__dataclass_fields__ if k not in block]
            if missing:
                raise ConfigError(
                    f"missing dimensional parameter(s): {', '.join(missing)}", field=f"dimensional.{missing[0]}"
                )
            dimensional = DimensionalParams.from_dict(block)
            params = nondimensionalize(dimensional)

        solver_block = _numbers(_block(doc, "solver", _SOLVER_KEYS), "solver")
        n = solver_block.get("n", 201)
        if not isinstance(n, int) or n < 3:
            raise ConfigError("n must be an integer of at least 3", field="solver.n")
        solver = SolverConfig(**{k: v for k, v in solver_block.items() if k != "n"})
    except DomainError as e:
        raise ConfigError(str(e), field=_field_of(e)) from e

    output = _block(doc, "output", _OUTPUT_KEYS)
    for key, value in output.items():
        if value is not None and not isinstance(value, str):
            raise ConfigError(f"output.{key} must be a path string", field=f"output.{key}")

    return RunConfig(
        params=params,
        dimensional=dimensional,
        n=n,
        solver=solver,
        csv=output.get("csv"),
        svg=output.get("svg"),
    )


def load_config(path: Path | str) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror or e}") from e
    return parse_config(text)
