"""
Unit tests for run configuration parsing.

Run: python3 tests/config_tests.py
"""

import json
import sys
import tempfile
import traceback
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from glucomem import ConfigError, load_config, parse_config

# ─────────────────────────────────────────────
# Minimal test framework
# ─────────────────────────────────────────────

passed = 0
failed = 0
errors = []


def test(name, fn):
    global passed, failed
    try:
        fn()
        print(f"  ✓ {name}")
        passed += 1
    except AssertionError as e:
        print(f"  ✗ {name}")
        errors.append((name, str(e)))
        failed += 1
    except Exception as e:
        print(f"  ✗ {name} [ERROR]")
        errors.append((name, traceback.format_exc()))
        failed += 1


def section(name):
    print(f"\n── {name} ──")


def config_error(text, match=None):
    try:
        parse_config(text)
    except ConfigError as e:
        if match is not None:
            assert match in str(e), f"{match!r} not in {str(e)!r}"
        return e
    raise AssertionError("ConfigError not raised")


REDUCED = {"alpha": 0.01, "beta": 1.15, "gammaE1": 10, "gammaS1": 10, "eta": 1, "mu": 1}
PHYSICAL = {
    "C_g_star": 1e-2, "C_ox_star": 1e-2, "D_g": 1e-6, "D_ox": 1e-6, "D_a": 1e-6,
    "K_g": 1.0, "K_ox": 1e-2 / 1.15, "V_max": 1e-5, "l": 0.1,
}


# ─────────────────────────────────────────────
# Valid documents
# ─────────────────────────────────────────────

section("Valid documents")

def test_dimensionless():
    config = parse_config(json.dumps({"dimensionless": REDUCED}))
    assert config.params.to_dict() == REDUCED
    assert config.dimensional is None

test("dimensionless block parses to the same parameters", test_dimensionless)

def test_defaults():
    config = parse_config(json.dumps({"dimensionless": {"alpha": 0.1, "beta": 1, "gammaE1": 5, "gammaS1": 20}}))
    assert (config.params.eta, config.params.mu) == (1.0, 1.0)
    assert config.n == 201
    assert config.solver.dt == 1e-3 and config.solver.newton_tol == 1e-9
    assert config.solver.newton_max_iters == 50 and config.solver.steady_tol == 1e-8
    assert config.solver.damping_min == 1 / 64
    assert config.csv is None and config.svg is None

test("omitted eta, mu, solver and output settings take their defaults", test_defaults)

def test_dimensional_reduced():
    config = parse_config(json.dumps({"dimensional": PHYSICAL}))
    assert abs(config.params.gamma_E1 - 10.0) <= 1e-9
    assert abs(config.params.beta - 1.15) <= 1e-12
    assert config.dimensional.l == 0.1
    assert "gammaE1=10 " in config.provenance("steady")

test("dimensional block is reduced and the derived gammaE1 = 10 is echoed", test_dimensional_reduced)

def test_solver_and_output():
    doc = {"dimensionless": REDUCED, "solver": {"n": 101, "dt": 0.01}, "output": {"csv": "a.csv", "svg": "a.svg"}}
    config = parse_config(json.dumps(doc))
    assert config.grid.n == 101 and config.solver.dt == 0.01
    assert (config.csv, config.svg) == ("a.csv", "a.svg")
    assert config.provenance("steady").endswith(
        "n=101 dt=0.01 newton_tol=1e-09 newton_max_iters=50 steady_tol=1e-08 damping_min=0.015625"
    )

test("solver and output blocks are applied", test_solver_and_output)

def test_json_export():
    config = parse_config(json.dumps({"dimensionless": REDUCED}))
    again = parse_config(config.to_json())
    assert again.params == config.params

test("exported config parses back to the same parameters", test_json_export)


# ─────────────────────────────────────────────
# Rejected documents
# ─────────────────────────────────────────────

section("Rejected documents")

def test_negative_alpha():
    e = config_error(json.dumps({"dimensionless": dict(REDUCED, alpha=-1)}), "alpha must be positive")
    assert e.field == "alpha"

test("alpha = -1 names alpha", test_negative_alpha)

def test_negative_gamma():
    config_error(json.dumps({"dimensionless": dict(REDUCED, gammaS1=-2)}), "gammaS1 must be non-negative")

test("negative gammaS1 is rejected", test_negative_gamma)

def test_both_blocks():
    config_error(json.dumps({"dimensionless": REDUCED, "dimensional": PHYSICAL}), "both given")
    config_error(json.dumps({"solver": {"n": 11}}), "neither given")

test("exactly one parameter block is required", test_both_blocks)

def test_malformed_json():
    e = config_error('{\n  "dimensionless": {"alpha": 0.01,,}\n}', "malformed JSON")
    assert e.line == 2 and e.column is not None

test("malformed JSON reports line and column", test_malformed_json)

def test_unknown_keys():
    e = config_error(json.dumps({"dimensionless": REDUCED, "plots": {}}), "plots")
    assert e.field == "plots"
    config_error(json.dumps({"dimensionless": dict(REDUCED, gamma=3)}), "gamma")
    config_error(json.dumps({"dimensionless": REDUCED, "solver": {"grid": 11}}), "grid")

test("unknown keys are named", test_unknown_keys)

def test_missing_parameter():
    e = config_error(json.dumps({"dimensionless": {"alpha": 0.01, "beta": 1.15, "gammaE1": 10}}), "gammaS1")
    assert e.field == "gammaS1"
    config_error(json.dumps({"dimensional": {k: v for k, v in PHYSICAL.items() if k != "V_max"}}), "V_max")

test("missing required parameters are named", test_missing_parameter)

def test_bad_types():
    config_error(json.dumps({"dimensionless": dict(REDUCED, beta="1.15")}), "beta must be a number")
    config_error(json.dumps({"dimensionless": REDUCED, "solver": {"n": 2}}), "n must be an integer")
    config_error(json.dumps({"dimensionless": REDUCED, "solver": {"dt": 0}}), "dt must be positive")
    config_error(json.dumps({"dimensionless": REDUCED, "output": {"csv": 3}}), "output.csv")

test("wrong types and out-of-range solver settings are rejected", test_bad_types)


# ─────────────────────────────────────────────
# Loading from disk
# ─────────────────────────────────────────────

section("Loading from disk")

def test_load_file():
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "c.json"
        path.write_text(json.dumps({"dimensionless": REDUCED}), encoding="utf-8")
        assert load_config(path).params.gamma_E1 == 10

test("load_config reads a file", test_load_file)

def test_missing_file():
    with tempfile.TemporaryDirectory() as tmpdir:
        try:
            load_config(Path(tmpdir) / "absent.json")
        except ConfigError as e:
            assert "cannot read config" in str(e)
            return
        raise AssertionError("ConfigError not raised")

test("missing config file is a ConfigError", test_missing_file)


# ─────────────────────────────────────────────
# Results
# ─────────────────────────────────────────────

total = passed + failed
print(f"\n{'='*50}")
print(f"Results: {passed}/{total} passed", end="")
if failed:
    print(f"  ({failed} failed)")
    print("\nFailures:")
    for name, err in errors:
        print(f"\n  ✗ {name}")
        print(f"    {err}")
else:
    print(" ✓")
print('='*50)
sys.exit(0 if failed == 0 else 1)
