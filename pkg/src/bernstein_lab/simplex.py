"""Dense simplex for  max c.x  subject to  -1 <= (A x)_i <= 1.

The two-sided rows are doubled into A x <= 1 and -A x <= 1 and the problem is
solved through its dual

    min sum(mu)  s.t.  [A^T, -A^T] mu = c,  mu >= 0,

which has only len(c) equality rows. Any n linearly independent rows of A give
a feasible starting basis once each column's sign is matched to the sign of
its weight, so no artificial phase is needed. Degenerate stalls fall back to
Bland's rule; the primal optimum is the vector of simplex multipliers of the final basis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr

from .errors import LPError


@dataclass(frozen=True, eq=False)
class LPResult:
    x: np.ndarray
    value: float
    pivots: int
    active_rows: np.ndarray     # grid rows carrying dual weight
    basis_rows: np.ndarray      # grid rows of the final basis, reusable as a warm start


def _revised_simplex(D, rhs, basis, max_pivots, rc_tol, pivot_tol, stall_limit=20):
    """Revised simplex on  min sum(mu), D mu = rhs, mu >= 0.  Mutates ``basis``.

    Prices with the most negative reduced cost, and switches to Bland's rule
    (lowest index enters and leaves) after ``stall_limit`` consecutive
    degenerate pivots until the objective moves again.
    """
    pivots, stalled = 0, 0
    while True:
        B = D[:, basis]
        x_b = np.linalg.solve(B, rhs)
        y = np.linalg.solve(B.T, np.ones(len(basis)))
        reduced = 1.0 - y @ D
        reduced[basis] = 0.0
        candidates = np.nonzero(reduced < -rc_tol)[0]
        if candidates.size == 0:
            return x_b, y, pivots
        bland = stalled >= stall_limit
        j = candidates[0] if bland else candidates[np.argmin(reduced[candidates])]
        u = np.linalg.solve(B, D[:, j])
        rows = np.nonzero(u > pivot_tol * max(1.0, np.abs(u).max()))[0]
        if rows.size == 0:
            raise LPError("dual problem unbounded below (primal infeasible)")
        steps = np.maximum(x_b[rows], 0.0) / u[rows]
        best = steps.min()
        ties = rows[steps <= best + 1e-12 * max(1.0, best)]
        if bland:
            leave = ties[np.argmin(np.asarray(basis)[ties])]
        else:
            leave = ties[np.argmax(u[ties])]
        basis[leave] = j
        stalled = stalled + 1 if best * abs(reduced[j]) <= 1e-15 else 0
        pivots += 1
        if pivots > max_pivots:
            raise LPError(f"simplex exceeded {max_pivots} pivots")


def solve_bounded_lp(
    objective, samples, start_rows=None, max_pivots: int = 200_000, tol: float = 1e-9
) -> LPResult:
    """Solve the bounded LP; ``start_rows`` (n row indices) seeds the basis when independent."""
    c = np.asarray(objective, dtype=float).ravel()
    A = np.atleast_2d(np.asarray(samples, dtype=float))
    n, M = c.size, A.shape[0]
    if A.shape[1] != n:
        raise ValueError(f"samples must have {n} columns, got {A.shape[1]}")
    if M < n:
        raise LPError("fewer sample rows than unknowns; the problem is unbounded")
    start = None
    if start_rows is not None:
        start = np.unique(np.asarray(start_rows, dtype=int))
        if start.size != n or np.linalg.cond(A[start]) > 1e10:
            start = None
    if start is None:
        _, r, perm = qr(A.T, pivoting=True)
        if abs(r[n - 1, n - 1]) <= 1e-12 * abs(r[0, 0]):
            raise LPError("sample matrix lacks full column rank; the problem is unbounded")
        start = np.sort(perm[:n])
    lam = np.linalg.solve(A[start].T, c)
    basis = [int(i) if l >= 0 else int(i) + M for i, l in zip(start, lam)]
    D = np.hstack([A.T, -A.T])
    x_b, y, pivots = _revised_simplex(D, c, basis, max_pivots, tol, tol)
    mu = np.zeros(2 * M)
    mu[basis] = x_b
    weights = mu[:M] + mu[M:]
    active = np.nonzero(weights > 1e-12)[0]
    rows = np.sort(np.asarray(basis) % M)
    return LPResult(y, float(c @ y), pivots, active, rows)


def maximize_linear_over_unit_ball(objective, samples) -> tuple[np.ndarray, float]:
    """Maximize objective.c subject to |samples @ c| <= 1 row-wise."""
    res = solve_bounded_lp(objective, samples)
    return res.x, res.value
