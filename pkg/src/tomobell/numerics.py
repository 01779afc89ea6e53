"""Small dense linear algebra for the fixed 4x4 problem size, plus the
generic stochastic reduction map that turns a photon-number distribution
into a coarse-grained probability block.

All functions are pure; arrays are never modified in place.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidStochasticMatrix, SingularMatrix

# |det m| must exceed this multiple of ||m||_F^4 for an inversion to be
# attempted. The fourth power keeps the test scale invariant: det scales
# as the fourth power of the matrix under m -> c*m.
SINGULARITY_SCALE = 1e-12

# probability tables and reduction map columns must balance to within this
PROB_TOL = 1e-9


def _as_mat4(m) -> np.ndarray:
    a = np.asarray(m)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def mat4_det(m):
    """Determinant of a real or complex 4x4 matrix.

    Uses LU factorization with partial pivoting (LAPACK via numpy), which
    is exact to rounding for this fixed size.
    """
    return np.linalg.det(_as_mat4(m))


def singularity_threshold(m) -> float:
    """The |det| cutoff below which ``mat4_inverse`` refuses to invert."""
    a = _as_mat4(m)
    return SINGULARITY_SCALE * float(np.linalg.norm(a)) ** 4


def mat4_inverse(m) -> np.ndarray:
    """Inverse of a 4x4 matrix with an explicit singularity guard.

    Args:
        m: real or complex 4x4 array.

    Returns:
        The inverse as a new array.

    Raises:
        SingularMatrix: if |det m| <= 1e-12 * ||m||_F^4. A zero or
            near-zero matrix (for instance I - 2M of a vacuum state)
            fails loudly here instead of producing huge garbage.
    """
    a = _as_mat4(m)
    det = np.linalg.det(a)
    if abs(det) <= singularity_threshold(a):
        raise SingularMatrix(
            f"|det| = {abs(det):.3e} is at or below the singularity threshold"
        )
    return np.linalg.inv(a)


def _check_column_stochastic(p: np.ndarray, name: str) -> None:
    if np.any(p < -PROB_TOL) or np.any(p > 1 + PROB_TOL):
        raise InvalidStochasticMatrix(f"{name} entries must lie in [0, 1]")
    col_sums = p.sum(axis=0)
    if np.any(np.abs(col_sums - 1.0) > PROB_TOL):
        worst = float(np.max(np.abs(col_sums - 1.0)))
        raise InvalidStochasticMatrix(
            f"{name} columns must each sum to 1 (worst deviation {worst:.3e})"
        )


def stochastic_reduce(w, row_map, col_map) -> np.ndarray:
    """Coarse-grain a finite joint distribution into a 2x2 block.

    Computes ``row_map @ w @ col_map.T`` where each map is a 2xN matrix
    whose columns are conditional distributions over the two coarse
    outcomes (every column sums to 1, entries in [0, 1]). With 0/1
    indicator columns this is exactly a cell-sum partition of the joint
    table; fractional entries give randomized coarse graining.

    Args:
        w: R x C array of joint probabilities, entries >= 0, total 1.
        row_map: 2 x R column-stochastic matrix acting on the row index.
        col_map: 2 x C column-stochastic matrix acting on the column index.

    Returns:
        2x2 array of probabilities summing to 1.

    Raises:
        InvalidStochasticMatrix: if a map column sum deviates from 1 by
            more than 1e-9, or the input table is not a distribution.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 2:
        raise InvalidStochasticMatrix("w must be a 2-d probability table")
    row_map = np.asarray(row_map, dtype=float)
    col_map = np.asarray(col_map, dtype=float)
    if row_map.shape != (2, w.shape[0]):
        raise InvalidStochasticMatrix(
            f"row_map shape {row_map.shape} does not match table rows {w.shape[0]}"
        )
    if col_map.shape != (2, w.shape[1]):
        raise InvalidStochasticMatrix(
            f"col_map shape {col_map.shape} does not match table columns {w.shape[1]}"
        )
    if np.any(w < -PROB_TOL):
        raise InvalidStochasticMatrix("w entries must be nonnegative")
    if abs(w.sum() - 1.0) > PROB_TOL:
        raise InvalidStochasticMatrix(
            f"w must sum to 1, got {w.sum():.12f}"
        )
    _check_column_stochastic(row_map, "row_map")
    _check_column_stochastic(col_map, "col_map")

    out = row_map @ w @ col_map.T
    # rounding can leave values a hair outside [0, 1]
    np.clip(out, 0.0, 1.0, out=out)
    return out
