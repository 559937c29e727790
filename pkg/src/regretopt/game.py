"""Exact mixed equilibria of finite zero-sum matrix games.

The row player minimizes and the column player maximizes; entry (i, j) is
the payoff the row player hands to the column player.  The game value is
found with a dense tableau simplex on the classical formulation: shift the
matrix positive, then

    max 1'u  subject to  A'u <= 1, u >= 0

over the shifted, transposed matrix.  The optimal u rescales to the row
strategy, the duals on the slack columns rescale to the column strategy,
and 1/(sum u) recovers the shifted value.  No external solver is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Certified equilibria may leave either player this much room to improve.
CERT_TOL = 1e-7

_PIVOT_TOL = 1e-9
_REDUCED_COST_TOL = 1e-10


class SolverFailure(Exception):
    """The simplex could not produce a certified equilibrium."""


@dataclass(frozen=True)
class Equilibrium:
    """Optimal mixed strategies and the game value they guarantee."""

    row_probs: np.ndarray
    col_probs: np.ndarray
    value: float


def _as_matrix(matrix) -> np.ndarray:
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("game matrix must be 2-d and nonempty")
    if not np.isfinite(a).all():
        raise ValueError("game matrix entries must be finite")
    return a


def best_pure_row(matrix, col_probs) -> tuple[int, float]:
    """Row minimizing expected payoff against col_probs; ties pick the lowest index."""
    a = _as_matrix(matrix)
    q = np.asarray(col_probs, dtype=float)
    payoffs = a @ q
    i = int(np.argmin(payoffs))
    return i, float(payoffs[i])


def best_pure_col(matrix, row_probs) -> tuple[int, float]:
    """Column maximizing expected payoff against row_probs; ties pick the lowest index."""
    a = _as_matrix(matrix)
    p = np.asarray(row_probs, dtype=float)
    payoffs = p @ a
    j = int(np.argmax(payoffs))
    return j, float(payoffs[j])


def _simplex(tableau: np.ndarray, basis: list[int], num_cols: int) -> None:
    """Maximize in place; raises SolverFailure instead of looping or dividing blindly.

    Dantzig pricing with lowest-index tie breaks; switches to Bland's rule
    after a fixed budget so degenerate cycles cannot persist.
    """
    obj = tableau.shape[0] - 1
    bland_after = 100 + 20 * num_cols
    max_iters = 1000 + 200 * num_cols
    for it in range(max_iters):
        costs = tableau[obj, :num_cols]
        if it < bland_after:
            col = int(np.argmin(costs))
            if costs[col] >= -_REDUCED_COST_TOL:
                return
        else:
            negative = np.nonzero(costs < -_REDUCED_COST_TOL)[0]
            if negative.size == 0:
                return
            col = int(negative[0])
        column = tableau[:obj, col]
        rhs = tableau[:obj, -1]
        eligible = np.nonzero(column > _PIVOT_TOL)[0]
        if eligible.size == 0:
            raise SolverFailure("LP relaxation is unbounded; matrix data is unusable")
        ratios = rhs[eligible] / column[eligible]
        best = ratios.min()
        ties = eligible[np.nonzero(ratios <= best + _PIVOT_TOL * (1.0 + abs(best)))[0]]
        # lowest leaving basis index keeps pivoting deterministic and Bland-safe
        row = int(min(ties, key=lambda r: basis[r]))
        pivot = tableau[row, col]
        if not np.isfinite(pivot) or abs(pivot) < _PIVOT_TOL:
            raise SolverFailure("numerically singular pivot")
        tableau[row] /= pivot
        for r in range(tableau.shape[0]):
            if r != row and tableau[r, col] != 0.0:
                tableau[r] -= tableau[r, col] * tableau[row]
        basis[row] = col
    raise SolverFailure("simplex iteration budget exhausted")


def solve_zero_sum(matrix) -> Equilibrium:
    """Solve the matrix game exactly and certify the result.

    Raises SolverFailure rather than returning strategies that fail the
    equilibrium certificates.
    """
    a = _as_matrix(matrix)
    k, l = a.shape
    shift = float(a.min()) - 1.0
    positive = a - shift  # every entry >= 1, so the game value is positive

    # max 1'u  s.t.  positive' u <= 1, u >= 0
    num_cols = k + l
    tableau = np.zeros((l + 1, num_cols + 1))
    tableau[:l, :k] = positive.T
    tableau[:l, k:num_cols] = np.eye(l)
    tableau[:l, -1] = 1.0
    tableau[l, :k] = -1.0
    basis = list(range(k, num_cols))
    _simplex(tableau, basis, num_cols)

    scale = float(tableau[l, -1])
    if scale <= 0.0:
        raise SolverFailure("degenerate optimum with nonpositive objective")
    u = np.zeros(k)
    for r, b in enumerate(basis):
        if b < k:
            u[b] = tableau[r, -1]
    duals = np.array(tableau[l, k:num_cols])

    row_probs = np.clip(u / scale, 0.0, None)
    col_probs = np.clip(duals / scale, 0.0, None)
    row_probs /= row_probs.sum()
    col_probs /= col_probs.sum()
    value = 1.0 / scale + shift

    _, col_response = best_pure_col(a, row_probs)
    _, row_response = best_pure_row(a, col_probs)
    if col_response > value + CERT_TOL or row_response < value - CERT_TOL:
        raise SolverFailure(
            "equilibrium certificates violated: value %.12g, best column response %.12g, "
            "best row response %.12g" % (value, col_response, row_response)
        )
    return Equilibrium(row_probs=row_probs, col_probs=col_probs, value=value)
