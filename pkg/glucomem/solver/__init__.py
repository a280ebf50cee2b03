from .banded import BandedMatrix, banded_solve
from .convergence import estimate_convergence_order
from .discretization import jacobian_banded, rhs_norm, semidiscrete_rhs
from .steady import solve_steady
from .transient import solve_transient, step_implicit

__all__ = [
    "BandedMatrix",
    "banded_solve",
    "estimate_convergence_order",
    "jacobian_banded",
    "rhs_norm",
    "semidiscrete_rhs",
    "solve_steady",
    "solve_transient",
    "step_implicit",
]
