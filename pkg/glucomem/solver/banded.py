"""
Banded linear algebra for the Newton inner solve.

Matrices are stored in LAPACK diagonal-ordered form, the layout
scipy.linalg.solve_banded expects:

    ab[upper + i - j, j] == a[i, j]

The solve goes through the gbsv driver directly so a zero pivot can be
reported by index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import get_lapack_funcs

from ..errors import ContractError, SingularMatrixError


@dataclass(frozen=True, eq=False)
class BandedMatrix:
    ab: np.ndarray
    lower: int
    upper: int

    def __post_init__(self) -> None:
        ab = np.asarray(self.ab, dtype=float)
        if ab.ndim != 2 or ab.shape[0] != self.lower + self.upper + 1:
            raise ContractError(
                f"banded storage must have {self.lower + self.upper + 1} rows, got shape {ab.shape}"
            )
        object.__setattr__(self, "ab", ab)

    @property
    def n(self) -> int:
        return self.ab.shape[1]

    @classmethod
    def from_dense(cls, a: np.ndarray, lower: int, upper: int) -> BandedMatrix:
        a = np.asarray(a, dtype=float)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ContractError(f"matrix must be square, got shape {a.shape}")
        ab = np.zeros((lower + upper + 1, n))
        for d in range(-lower, upper + 1):
            diag = np.diagonal(a, d)
            if d >= 0:
                ab[upper - d, d:] = diag
            else:
                ab[upper - d, : n + d] = diag
        return cls(ab, lower, upper)

    def to_dense(self) -> np.ndarray:
        n = self.n
        a = np.zeros((n, n))
        for d in range(-self.lower, self.upper + 1):
            row = self.ab[self.upper - d]
            if d >= 0:
                a += np.diag(row[d:], d)
            else:
                a += np.diag(row[: n + d], d)
        return a

    def matvec(self, x: np.ndarray) -> np.ndarray:
        n = self.n
        y = np.zeros(n)
        for d in range(-self.lower, self.upper + 1):
            row = self.ab[self.upper - d]
            if d >= 0:
                y[: n - d] += row[d:] * x[d:]
            else:
                y[-d:] += row[: n + d] * x[: n + d]
        return y

    def norm_inf(self) -> float:
        """Maximum absolute row sum."""
        return float(np.max(BandedMatrix(np.abs(self.ab), self.lower, self.upper).matvec(np.ones(self.n))))


def banded_solve(matrix: BandedMatrix, rhs: np.ndarray) -> np.ndarray:
    """Solve matrix·x = rhs by banded LU with partial pivoting."""
    b = np.asarray(rhs, dtype=float)
    n = matrix.n
    if b.shape != (n,):
        raise ContractError(f"rhs has shape {b.shape}, matrix is {n}×{n}")

    if n == 1:
        pivot = matrix.ab[matrix.upper, 0]
        if pivot == 0:
            raise SingularMatrixError("singular matrix: zero pivot at index 0", pivot=0)
        return b / pivot

    lower, upper = matrix.lower, matrix.upper
    gbsv, = get_lapack_funcs(("gbsv",), (matrix.ab, b))
    work = np.zeros((2 * lower + upper + 1, n), dtype=gbsv.dtype)
    work[lower:, :] = matrix.ab
    _, _, x, info = gbsv(lower, upper, work, b, overwrite_ab=True, overwrite_b=False)
    if info > 0:
        raise SingularMatrixError(
            f"singular matrix: zero pivot at index {info - 1}", pivot=info - 1
        )
    if info < 0:
        raise ContractError(f"illegal value in argument {-info} of the banded solver")
    return x
