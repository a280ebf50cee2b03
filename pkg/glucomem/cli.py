"""
glucomem — glucose-sensitive membrane simulator CLI.

Usage:
  glucomem steady      --config PATH [--grid N] --out CSV [--plot SVG] [--dimensional]
  glucomem transient   --config PATH --tau-end TAU [--dt DT] [--samples T1,T2,...] --out CSV [--plot SVG]
  glucomem closed-form --method {agm,vim-steady,vim-transient} --config PATH [--tau TAU] --out CSV [--plot SVG]
  glucomem tables      --which {1,2,3} --out CSV [--grid N] [--workers N]
  glucomem sweep       --param NAME --values V1,V2,... --config PATH --species {u,v,w} --out CSV [--plot SVG] [--numerical]
  glucomem sensitivity --config PATH --target {u,v,w} [--delta FRAC] [--functional {center,mean}] --out CSV
  glucomem --help

Exit codes: 0 success, 1 usage or config error, 2 solver or output failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .config import RunConfig, load_config
from .errors import ConfigError, ContractError, DomainError
from .models import ClosedFormMethod, Functional, Grid, SolverConfig, Species, ToolResult
from .runner import (
    run_closed_form, run_sensitivity, run_steady, run_sweep, run_tables, run_transient,
)
from .validation.sweeps import sweep_parameter_names

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


# ── ANSI colours ──────────────────────────────────────────────────────────────

_USE_COLOR = sys.stdout.isatty()


def _colour(text: str, code: str) -> str:
    return f"\033[{code}m{text}\033[0m" if _USE_COLOR else text


def red(t: str)    -> str: return _colour(t, "31")
def yellow(t: str) -> str: return _colour(t, "33")
def green(t: str)  -> str: return _colour(t, "32")
def bold(t: str)   -> str: return _colour(t, "1")


# ── Helpers ───────────────────────────────────────────────────────────────────

class _Parser(argparse.ArgumentParser):
    """Usage errors go to stderr with exit code 1 instead of argparse's 2."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _load(args) -> RunConfig:
    """Load --config and apply the --grid / --dt overrides."""
    config = load_config(args.config)
    try:
        grid = getattr(args, "grid", None)
        if grid is not None:
            config = replace(config, n=Grid(grid).n)
        dt = getattr(args, "dt", None)
        if dt is not None:
            config = replace(config, solver=replace(config.solver, dt=dt))
    except (ContractError, DomainError) as e:
        raise ConfigError(str(e)) from e
    return config


def _out(args, config: Optional[RunConfig] = None) -> str:
    out = args.out or (config.csv if config else None)
    if not out:
        raise ConfigError("an output path is required (--out or output.csv)", field="output.csv")
    return out


def _finish(result: ToolResult, summary) -> int:
    """Print a one-line summary or the failure, and map the result to an exit code."""
    if not result.success:
        print(red(f"✗ {result.error}"))
        if result.next_action_hint:
            print(f"  Note: {result.next_action_hint}")
        return EXIT_USAGE if result.kind == "config" else EXIT_FAILURE
    print(green("✓ ") + summary(result.data))
    if result.next_action_hint:
        print(yellow(f"  Note: {result.next_action_hint}"))
    return EXIT_OK


def _config_failure(e: ConfigError) -> int:
    print(red(f"✗ {e}"))
    return EXIT_USAGE


def _scenario(data: dict) -> str:
    return " ".join(f"{k}={v:g}" for k, v in data["scenario"].items())


def _paths(data: dict) -> str:
    return " → " + ", ".join(p for p in (data.get("path"), data.get("plot")) if p)


# ── Commands ──────────────────────────────────────────────────────────────────

def cmd_steady(args) -> int:
    try:
        config = _load(args)
        out = _out(args, config)
    except ConfigError as e:
        return _config_failure(e)
    result = run_steady(config, out, args.plot or config.svg, args.dimensional)
    return _finish(result, lambda d: (
        f"steady {_scenario(d)}  ‖F‖∞={d['residual_norm']:.2e} ({d['iterations']} it)" + _paths(d)
    ))


def cmd_transient(args) -> int:
    try:
        config = _load(args)
        out = _out(args, config)
    except ConfigError as e:
        return _config_failure(e)
    result = run_transient(config, out, args.tau_end, args.samples, args.plot)

    def summary(d: dict) -> str:
        steady = d["steady_reached_at"]
        tail = f"steady at τ={steady:g}" if steady is not None else f"‖rhs‖∞={d['rhs_norm']:.2e}"
        return f"transient {_scenario(d)}  {len(d['samples'])} samples, {tail}" + _paths(d)

    return _finish(result, summary)


def cmd_closed_form(args) -> int:
    try:
        config = _load(args)
        out = _out(args, config)
    except ConfigError as e:
        return _config_failure(e)
    result = run_closed_form(config, args.method, out, args.tau, args.plot)

    def summary(d: dict) -> str:
        extra = f"  m = {d['m']:.4f}" if d["method"] == ClosedFormMethod.AGM.value else ""
        if "tau" in d:
            extra = f"  τ={d['tau']:g}"
        return f"closed-form {d['method']} {_scenario(d)}{extra}" + _paths(d)

    return _finish(result, summary)


def cmd_tables(args) -> int:
    try:
        grid = Grid(args.grid)
    except ContractError as e:
        return _config_failure(ConfigError(str(e), field="grid"))
    result = run_tables(args.which, args.out, grid, SolverConfig(), args.workers)
    return _finish(result, lambda d: (
        bold(f"table {d['table']}") + f"  max mean deviation vim={d['max_mean_errors']['vim']:.4f} "
        f"agm={d['max_mean_errors']['agm']:.4f}" + _paths(d)
    ))


def cmd_sweep(args) -> int:
    try:
        config = _load(args)
        out = _out(args, config)
    except ConfigError as e:
        return _config_failure(e)
    result = run_sweep(
        config, args.param, args.values, args.species, out, args.plot, args.numerical, args.workers,
    )
    return _finish(result, lambda d: (
        f"sweep {d['param']} over {len(d['values'])} value(s), species {d['species']}, {d['rows']} rows" + _paths(d)
    ))


def cmd_sensitivity(args) -> int:
    try:
        config = _load(args)
        out = _out(args, config)
    except ConfigError as e:
        return _config_failure(e)
    result = run_sensitivity(config, args.target, out, args.delta, args.functional, args.workers)

    def summary(d: dict) -> str:
        top = max(d["shares"].items(), key=lambda kv: kv[1])
        return (
            f"sensitivity of {d['target']} ({d['functional']}, δ={d['delta']:g})  "
            f"largest share {top[0]}={top[1]:.1f}%" + _paths(d)
        )

    return _finish(result, summary)


# ── Parser ────────────────────────────────────────────────────────────────────

def _add_common(p: argparse.ArgumentParser, *, config: bool = True, plot: bool = True) -> None:
    if config:
        p.add_argument("--config", metavar="PATH", required=True, help="JSON run configuration")
    p.add_argument("--out", metavar="CSV", default=None, help="CSV output path (default: output.csv)")
    if plot:
        p.add_argument("--plot", metavar="SVG", default=None, help="Also write an SVG chart")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="glucomem",
        description=(
            "Glucose-sensitive membrane simulator.\n\n"
            "Solves the coupled glucose / oxygen / gluconic-acid reaction-diffusion\n"
            "system, evaluates its closed-form approximations and reproduces the\n"
            "steady-state validation tables."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--verbose", action="store_true", help="Log solver progress to stderr")

    top = parser.add_subparsers(dest="command", required=True, metavar="COMMAND", help="Command to run")

    steady = top.add_parser("steady", help="Solve the steady boundary-value problem")
    _add_common(steady)
    steady.add_argument("--grid", metavar="N", type=int, default=None, help="Grid points (default 201)")
    steady.add_argument(
        "--dimensional", action="store_true",
        help="Write x, C_g, C_ox, C_a in physical units (needs a dimensional config block)",
    )
    steady.set_defaults(func=cmd_steady)

    transient = top.add_parser("transient", help="Integrate from the initial profile in time")
    _add_common(transient)
    transient.add_argument("--tau-end", metavar="TAU", type=float, required=True, help="Final dimensionless time")
    transient.add_argument("--dt", metavar="DT", type=float, default=None, help="Time step (default 1e-3)")
    transient.add_argument(
        "--samples", metavar="T1,T2,...", type=_floats, default=None,
        help="Sample times (default: 5 evenly spaced in [0, TAU])",
    )
    transient.add_argument("--grid", metavar="N", type=int, default=None, help="Grid points (default 201)")
    transient.set_defaults(func=cmd_transient)

    closed = top.add_parser("closed-form", help="Evaluate a closed-form approximation")
    _add_common(closed)
    closed.add_argument("--method", required=True, choices=[m.value for m in ClosedFormMethod])
    closed.add_argument("--tau", metavar="TAU", type=float, default=0.0, help="Time for vim-transient")
    closed.add_argument("--grid", metavar="N", type=int, default=None, help="Sample points (default 201)")
    closed.set_defaults(func=cmd_closed_form)

    tables = top.add_parser("tables", help="Reproduce a steady-state validation table")
    tables.add_argument("--which", type=int, required=True, choices=[1, 2, 3])
    tables.add_argument("--out", metavar="CSV", required=True)
    tables.add_argument("--grid", metavar="N", type=int, default=201)
    tables.add_argument("--workers", metavar="N", type=int, default=1, help="Scenarios solved in parallel")
    tables.set_defaults(func=cmd_tables)

    sweep = top.add_parser("sweep", help="Closed-form profiles for a list of parameter values")
    _add_common(sweep)
    sweep.add_argument("--param", required=True, choices=sweep_parameter_names())
    sweep.add_argument("--values", metavar="V1,V2,...", type=_floats, required=True)
    sweep.add_argument("--species", required=True, choices=[s.value for s in Species])
    sweep.add_argument("--numerical", action="store_true", help="Add the numerical steady profile column")
    sweep.add_argument("--grid", metavar="N", type=int, default=None, help="Grid points (default 201)")
    sweep.add_argument("--workers", metavar="N", type=int, default=1)
    sweep.set_defaults(func=cmd_sweep)

    sens = top.add_parser("sensitivity", help="Parameter influence shares for one species")
    _add_common(sens, plot=False)
    sens.add_argument("--target", required=True, choices=[s.value for s in Species])
    sens.add_argument("--delta", metavar="FRAC", type=float, default=0.01, help="Relative perturbation (default 0.01)")
    sens.add_argument("--functional", choices=[f.value for f in Functional], default=Functional.CENTER.value)
    sens.add_argument("--grid", metavar="N", type=int, default=None, help="Grid points (default 201)")
    sens.add_argument("--workers", metavar="N", type=int, default=1)
    sens.set_defaults(func=cmd_sensitivity)

    return parser


# ── Entry point ───────────────────────────────────────────────────────────────

def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return args.func(args)


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
