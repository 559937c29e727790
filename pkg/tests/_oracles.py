"""Independent reference solvers used only by the tests.

The zero-sum reference here finds an equilibrium by square-support
enumeration: for every equally sized row/column support it solves the
indifference equations directly and keeps the first candidate whose
strategies are nonnegative and whose best-response certificates hold.
Nothing is shared with the production solver beyond numpy.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

_EPS = 1e-8


def enum_equilibrium(matrix) -> tuple[float, np.ndarray, np.ndarray]:
    """Equilibrium of a small matrix game by support enumeration.

    Rows minimize, columns maximize.  Supports are scanned by size, then
    lexicographically, so the result is deterministic.
    """
    a = np.asarray(matrix, dtype=float)
    rows, cols = a.shape
    for k in range(1, min(rows, cols) + 1):
        row_supports = list(combinations(range(rows), k))
        col_supports = list(combinations(range(cols), k))
        pairs = [(i, j) for i in row_supports for j in col_supports]
        systems = np.zeros((len(pairs), k + 1, k + 1))
        rhs = np.zeros(k + 1)
        rhs[k] = 1.0
        for idx, (si, sj) in enumerate(pairs):
            block = a[np.ix_(si, sj)]
            systems[idx, :k, :k] = block.T  # indifference of every support column
            systems[idx, :k, k] = -1.0
            systems[idx, k, :k] = 1.0
        dets = np.linalg.det(systems)
        solvable = np.abs(dets) > 1e-12
        solutions = np.full((len(pairs), k + 1), np.nan)
        if solvable.any():
            solutions[solvable] = np.linalg.solve(systems[solvable], rhs)
        for idx, (si, sj) in enumerate(pairs):
            if not solvable[idx]:
                continue
            p_support = solutions[idx, :k]
            value = solutions[idx, k]
            if p_support.min() < -_EPS:
                continue
            # Column strategy from the transposed indifference system.
            dual = np.zeros((k + 1, k + 1))
            dual[:k, :k] = a[np.ix_(si, sj)]
            dual[:k, k] = -1.0
            dual[k, :k] = 1.0
            if abs(np.linalg.det(dual)) <= 1e-12:
                continue
            q_solution = np.linalg.solve(dual, rhs)
            q_support = q_solution[:k]
            if q_support.min() < -_EPS:
                continue
            p = np.zeros(rows)
            p[list(si)] = np.clip(p_support, 0.0, None)
            p /= p.sum()
            q = np.zeros(cols)
            q[list(sj)] = np.clip(q_support, 0.0, None)
            q /= q.sum()
            if (p @ a).max() <= value + _EPS and (a @ q).min() >= value - _EPS:
                return float(value), p, q
    raise RuntimeError("no equilibrium found by support enumeration")
