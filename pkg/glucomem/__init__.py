from .models import (
    Species, ClosedFormMethod, Functional, Stoichiometry, STOICHIOMETRY,
    DimensionalParams, DimensionlessParams, ClosedFormCoefficients,
    Grid, ConcentrationField, SolverConfig, DimensionalProfile,
    SteadyResult, TransientResult, ConvergenceReport,
    ErrorRow, ErrorReport, SensitivityReport, AuditResult, ToolResult,
)
from .errors import (
    GlucomemError, DomainError, ContractError, ConfigError, NumericError,
    NewtonConvergenceError, RootFindingError, SingularMatrixError, ArtifactIOError,
)
from .kinetics import (
    nondimensionalize, to_dimensional, reaction_rate_dimensional,
    reaction_term, reaction_term_partials, initial_profile,
)
from .closed_form import (
    thiele_k, agm_m, closed_form_coefficients, closed_form_field,
    steady_u, steady_v, steady_w, agm_profiles, vim_u, vim_v, vim_w,
)
from .solver import (
    BandedMatrix, banded_solve, semidiscrete_rhs, jacobian_banded, rhs_norm,
    step_implicit, solve_transient, solve_steady, estimate_convergence_order,
)
from .validation import (
    relative_deviation, reproduce_table, max_mean_errors, table_scenarios, TABLE_X,
    profile_sweep, comparison_sweep, series_by_value,
    sensitivity_analysis, check_steady_invariants,
)
from .emitters import emit_csv, emit_svg_polyline, Series, AxesSpec, Comment
from .config import RunConfig, parse_config, load_config
