"""
Unit tests for the validation layer: table reproduction, parameter sweeps,
sensitivity shares and the steady invariant audit.

Run: python3 tests/validation_tests.py
"""

import math
import sys
import traceback
from pathlib import Path
from unittest.mock import patch

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from glucomem import (
    ClosedFormMethod, ConcentrationField, ContractError, DimensionlessParams, DomainError, Grid,
    NewtonConvergenceError, SolverConfig, check_steady_invariants, closed_form_field, comparison_sweep,
    max_mean_errors, profile_sweep, relative_deviation, reproduce_table, sensitivity_analysis,
    series_by_value, solve_steady, table_scenarios,
)

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


def raises(exc_type, fn, match=None):
    try:
        fn()
    except exc_type as e:
        if match is not None:
            assert match in str(e), f"{match!r} not in {str(e)!r}"
        return e
    raise AssertionError(f"{exc_type.__name__} not raised")


TABLE1 = DimensionlessParams(alpha=0.01, beta=1.15, gamma_E1=10, gamma_S1=10)

# Tables are computed once and shared between the checks below.
_cache: dict = {}


def table(table_id):
    if table_id not in _cache:
        _cache[table_id] = reproduce_table(table_id, Grid(201), SolverConfig())
    return _cache[table_id]


# ─────────────────────────────────────────────
# Relative deviation
# ─────────────────────────────────────────────

section("Relative deviation")

def test_deviation_example():
    assert abs(relative_deviation(0.4479, 0.4503) - 0.0054) <= 0.0002

test("|0.4479 − 0.4503| / 0.4479 ≈ 0.0054", test_deviation_example)

def test_zero_cases():
    assert relative_deviation(0.0, 0.0) == 0.0
    assert math.isnan(relative_deviation(0.0, 0.1))
    assert relative_deviation(-2.0, -1.0) == 0.5

test("0/0 is 0, nonzero over zero is NaN, sign is ignored", test_zero_cases)


# ─────────────────────────────────────────────
# Table reproduction
# ─────────────────────────────────────────────

section("Table reproduction")

def test_scenario_definitions():
    assert [p.gamma_E1 for p, _ in table_scenarios(1)] == [10.0, 210.0, 350.0]
    assert [p.gamma_S1 for p, _ in table_scenarios(2)] == [10.0, 30.0, 35.0]
    assert all((p.alpha, p.beta, p.gamma_E1) == (0.1, 1.0, 5.0) for p, _ in table_scenarios(3))
    raises(ContractError, lambda: table_scenarios(4))

test("scenario columns per table", test_scenario_definitions)

def test_table1_shape():
    reports = table(1)
    assert len(reports) == 3
    for r in reports:
        assert [row.X for row in r.rows] == [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
        assert r.species.value == "u"

test("Table 1: three scenarios with six rows each", test_table1_shape)

def test_table1_vim_cell():
    first = table(1)[0].rows[0]
    assert abs(first.vim - 0.9528) <= 1e-4, first.vim
    assert abs(first.numerical - 0.9528) <= 0.002, first.numerical

test("Table 1 gammaE1 = 10, X = 0: closed form 0.9528", test_table1_vim_cell)

def test_table1_mean_errors():
    means = max_mean_errors(table(1))
    assert means["vim"] <= 0.01, means

test("Table 1: every mean deviation stays below 1 %", test_table1_mean_errors)

def test_mean_is_row_mean():
    for r in table(1):
        expected = sum(row.dev_vim for row in r.rows) / len(r.rows)
        assert abs(r.mean_dev_vim - expected) <= 1e-15

test("reported mean is the mean of the six row deviations", test_mean_is_row_mean)

def test_boundary_row_exact():
    for r in table(1):
        last = r.rows[-1]
        assert last.numerical == 1.0 and last.dev_vim == 0.0

test("X = 1 row: numerical value 1 and zero deviation", test_boundary_row_exact)

def test_table2_notes():
    reports = table(2)
    assert reports[0].notes == []
    assert all("qualitative only" in r.notes[0] for r in reports[1:])
    assert all(r.species.value == "v" for r in reports)

test("Table 2: columns beyond gammaS1 = 10 are marked qualitative", test_table2_notes)

def test_table3_values():
    reports = table(3)
    strongest = reports[-1]
    assert abs(strongest.rows[0].vim - 1.4192) <= 1e-4, strongest.rows[0].vim
    assert strongest.mean_dev_vim <= 0.07, strongest.mean_dev_vim
    assert all(r.rows[-1].dev_vim == 0.0 and not r.rows[-1].flagged for r in reports)

test("Table 3 gammaS1 = 40: closed form 1.4192 at X = 0, mean deviation ≤ 7 %", test_table3_values)

def test_parallel_matches_serial():
    serial = reproduce_table(3, Grid(101), SolverConfig(), workers=1)
    parallel = reproduce_table(3, Grid(101), SolverConfig(), workers=2)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]

test("workers = 2 returns the same reports in the same order", test_parallel_matches_serial)

def test_bad_worker_count():
    raises(ContractError, lambda: reproduce_table(1, Grid(11), SolverConfig(), workers=0))

test("workers must be at least 1", test_bad_worker_count)


# ─────────────────────────────────────────────
# Parameter sweeps
# ─────────────────────────────────────────────

section("Parameter sweeps")

def test_thiele_override():
    rows = profile_sweep("u", "k", [0.098165], TABLE1)
    value, X, u = rows[0]
    assert (value, X) == (0.098165, 0.0)
    assert abs(u - 0.9528) <= 1e-4, u

test("k = 0.098165 gives u(0) = 0.9528", test_thiele_override)

def test_acid_vanishes_at_surface():
    rows = profile_sweep("w", "gammaS1", [5.0, 20.0, 40.0], DimensionlessParams(0.1, 1.0, 5.0, 5.0), resolution=11)
    assert len(rows) == 33
    assert all(c == 0.0 for value, X, c in rows if X == 1.0)

test("w = 0 at X = 1 for every swept value", test_acid_vanishes_at_surface)

def test_no_oxygen_consumption():
    rows = profile_sweep("v", "gammaS1", [0.0], TABLE1, resolution=21)
    assert all(c == 1.0 for _, _, c in rows)

test("gammaS1 = 0 leaves v ≡ 1", test_no_oxygen_consumption)

def test_series_grouping():
    rows = profile_sweep("u", "alpha", [0.01, 0.02], TABLE1, resolution=5)
    series = series_by_value(rows)
    assert list(series) == [0.01, 0.02]
    assert series[0.02][0] == [0.0, 0.25, 0.5, 0.75, 1.0]

test("sweep rows group into one series per value", test_series_grouping)

def test_invalid_sweep():
    raises(ContractError, lambda: profile_sweep("u", "gamma", [1.0], TABLE1), match="Valid names")
    raises(ContractError, lambda: profile_sweep("u", "alpha", [], TABLE1))
    raises(ContractError, lambda: comparison_sweep("u", "k", [0.1], TABLE1, Grid(11)))

test("unknown names and empty value lists are rejected", test_invalid_sweep)

def test_comparison_sweep():
    rows = comparison_sweep("u", "gammaE1", [10.0], TABLE1, Grid(101), SolverConfig())
    assert len(rows) == 101
    assert max(abs(closed - num) for _, _, closed, num in rows) <= 0.002

test("closed form and numerical agree for gammaE1 = 10", test_comparison_sweep)


# ─────────────────────────────────────────────
# Sensitivity
# ─────────────────────────────────────────────

section("Sensitivity")

_sens: dict = {}


def glucose_center():
    if "u" not in _sens:
        _sens["u"] = sensitivity_analysis("u", TABLE1, 0.01, "center", Grid(101), SolverConfig())
    return _sens["u"]


def test_shares_sum_to_100():
    report = glucose_center()
    assert abs(sum(report.shares.values()) - 100.0) <= 0.1
    assert report.failed == []

test("shares sum to 100 %", test_shares_sum_to_100)

def test_structural_zero():
    assert glucose_center().shares["mu"] == 0.0

test("acid diffusivity ratio has no influence on u", test_structural_zero)

def test_alpha_beats_beta():
    shares = glucose_center().shares
    assert shares["alpha"] > shares["beta"], shares

test("alpha outweighs beta for u at the centre", test_alpha_beats_beta)

def test_deterministic():
    again = sensitivity_analysis("u", TABLE1, 0.01, "center", Grid(101), SolverConfig(), workers=2)
    assert again.shares == glucose_center().shares

test("repeated runs give identical shares", test_deterministic)

def test_bad_delta():
    raises(DomainError, lambda: sensitivity_analysis("u", TABLE1, 0.0, grid=Grid(11)))
    raises(DomainError, lambda: sensitivity_analysis("u", TABLE1, 0.5, grid=Grid(11)))

test("delta outside (0, 0.1] is rejected", test_bad_delta)

def test_zero_valued_parameter():
    p = DimensionlessParams(0.01, 1.15, 10.0, 0.0)
    report = sensitivity_analysis("u", p, 0.01, "mean", Grid(51), SolverConfig())
    assert report.shares["gammaS1"] == 0.0
    assert any("gammaS1=0" in n for n in report.notes)

test("zero-valued parameter gets share 0 with a note", test_zero_valued_parameter)

def test_failed_perturbation_renormalized():
    base = sensitivity_analysis("u", TABLE1, 0.01, "center", Grid(51), SolverConfig())

    def flaky(params, grid, cfg):
        if params.gamma_E1 != TABLE1.gamma_E1:
            raise NewtonConvergenceError("no convergence", last_iterate=None)
        return solve_steady(params, grid, cfg)

    with patch("glucomem.validation.sensitivity.solve_steady", side_effect=flaky):
        report = sensitivity_analysis("u", TABLE1, 0.01, "center", Grid(51), SolverConfig())
    assert report.failed == ["gammaE1"]
    assert report.shares["gammaE1"] == 0.0
    assert math.isnan(report.sensitivities["gammaE1"])
    assert abs(sum(report.shares.values()) - 100.0) <= 1e-9
    assert any("failed: gammaE1" in n for n in report.notes)
    # remaining shares keep their ratios
    ratio = report.shares["alpha"] / report.shares["beta"]
    assert abs(ratio - base.shares["alpha"] / base.shares["beta"]) <= 1e-9 * ratio

test("failed perturbed solve flags the parameter and renormalizes the rest", test_failed_perturbation_renormalized)


# ─────────────────────────────────────────────
# Invariant audit
# ─────────────────────────────────────────────

section("Invariant audit")

def test_closed_form_satisfies_identities():
    field = closed_form_field(TABLE1, Grid(201), ClosedFormMethod.VIM_STEADY)
    audit = check_steady_invariants(field, TABLE1)
    assert audit.coupling_uv <= 1e-12 and audit.coupling_uw <= 1e-12
    assert audit.ok() and all(audit.monotone.values())

test("closed-form steady profiles satisfy both coupling identities", test_closed_form_satisfies_identities)

def test_table_suite_satisfies_identities():
    for table_id in (1, 2, 3):
        for p, _ in table_scenarios(table_id):
            audit = check_steady_invariants(solve_steady(p, Grid(201), SolverConfig()).field, p)
            assert audit.coupling_uv <= 1e-8 and audit.coupling_uw <= 1e-8, (p.describe(), audit.to_dict())
            assert audit.ok(), (p.describe(), audit.to_dict())
            assert audit.above_one == [], (p.describe(), audit.above_one)

test("every table scenario: coupling ≤ 1e-8, monotone, 0 ≤ u, v ≤ 1", test_table_suite_satisfies_identities)

def test_steady_bit_identical():
    p = table_scenarios(1)[1][0]
    a = solve_steady(p, Grid(201), SolverConfig()).field
    b = solve_steady(p, Grid(201), SolverConfig()).field
    assert np.array_equal(a.as_vector(), b.as_vector())

test("repeated steady solves are bit-identical", test_steady_bit_identical)

def test_boundary_violation_detected():
    grid = Grid(11)
    w = np.zeros(11)
    w[-1] = 0.5
    audit = check_steady_invariants(ConcentrationField(grid, np.ones(11), np.ones(11), w), TABLE1)
    assert audit.boundary_violation == 0.5
    assert not audit.ok()

test("injected w(1) = 0.5 is reported as a boundary violation of 0.5", test_boundary_violation_detected)

def test_negative_concentration_flagged():
    grid = Grid(5)
    u = np.array([-0.1, 0.2, 0.5, 0.8, 1.0])
    audit = check_steady_invariants(ConcentrationField(grid, u, np.ones(5), 1.0 - u), TABLE1)
    assert audit.negative == ["u"]

test("negative glucose is flagged", test_negative_concentration_flagged)


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
