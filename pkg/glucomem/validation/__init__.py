from .audit import check_steady_invariants
from .sensitivity import sensitivity_analysis
from .sweeps import comparison_sweep, profile_sweep, series_by_value
from .tables import TABLE_X, max_mean_errors, relative_deviation, reproduce_table, table_scenarios

__all__ = [
    "TABLE_X",
    "check_steady_invariants",
    "comparison_sweep",
    "max_mean_errors",
    "profile_sweep",
    "relative_deviation",
    "reproduce_table",
    "sensitivity_analysis",
    "series_by_value",
    "table_scenarios",
]
