"""A small dense two-phase simplex solver.

Handles the package's only optimization need: feasibility and minimax
problems over a few dozen nonnegative variables with a handful of rows.
Bland's rule keeps it cycle-free; everything is double precision with a
fixed pivot tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_TOL = 1e-9

__all__ = ["LPResult", "solve_lp"]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    value: float | None


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int):
    tab[row] /= tab[row, col]
    for r in range(tab.shape[0]):
        if r != row and abs(tab[r, col]) > 0.0:
            tab[r] -= tab[r, col] * tab[row]
    basis[row] = col


def _run_simplex(tab: np.ndarray, basis: list[int], n_cols: int) -> str:
    """Minimize the last row over columns [0, n_cols); returns the status."""
    m = tab.shape[0] - 1
    while True:
        costs = tab[-1, :n_cols]
        candidates = np.flatnonzero(costs < -_TOL)
        if candidates.size == 0:
            return "optimal"
        col = int(candidates[0])  # Bland: smallest entering index
        best_ratio, row = None, -1
        for r in range(m):
            if tab[r, col] > _TOL:
                ratio = tab[r, -1] / tab[r, col]
                if (
                    best_ratio is None
                    or ratio < best_ratio - _TOL
                    or (abs(ratio - best_ratio) <= _TOL and basis[r] < basis[row])
                ):
                    best_ratio, row = ratio, r
        if row < 0:
            return "unbounded"
        _pivot(tab, basis, row, col)


def solve_lp(
    c,
    a_ub=None,
    b_ub=None,
    a_eq=None,
    b_eq=None,
) -> LPResult:
    """Minimize c.x subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0."""
    c = np.asarray(c, dtype=float)
    n = c.size
    rows, rhs, slack_rows = [], [], []
    if a_ub is not None:
        a_ub = np.atleast_2d(np.asarray(a_ub, dtype=float))
        for r, beta in zip(a_ub, np.atleast_1d(b_ub)):
            rows.append(r)
            rhs.append(float(beta))
            slack_rows.append(len(rows) - 1)
    if a_eq is not None:
        a_eq = np.atleast_2d(np.asarray(a_eq, dtype=float))
        for r, beta in zip(a_eq, np.atleast_1d(b_eq)):
            rows.append(r)
            rhs.append(float(beta))
    m = len(rows)
    a = np.zeros((m, n + len(slack_rows)))
    a[:, :n] = np.vstack(rows) if rows else np.zeros((0, n))
    for k, r in enumerate(slack_rows):
        a[r, n + k] = 1.0
    b = np.asarray(rhs)
    neg = b < 0
    a[neg] *= -1.0
    b = np.abs(b)

    # phase 1: artificial variables form the starting basis
    total = a.shape[1]
    tab = np.zeros((m + 1, total + m + 1))
    tab[:m, :total] = a
    tab[:m, total : total + m] = np.eye(m)
    tab[:m, -1] = b
    basis = list(range(total, total + m))
    tab[-1, total : total + m] = 1.0
    for r in range(m):  # price out the artificial basis
        tab[-1] -= tab[r]
    status = _run_simplex(tab, basis, total)
    if status != "optimal" or tab[-1, -1] < -_TOL * max(1.0, np.abs(b).max()):
        return LPResult("infeasible", None, None)

    # drive remaining artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= total:
            cols = np.flatnonzero(np.abs(tab[r, :total]) > _TOL)
            if cols.size:
                _pivot(tab, basis, r, int(cols[0]))

    keep = [r for r in range(m) if basis[r] < total]
    tab2 = np.zeros((len(keep) + 1, total + 1))
    tab2[: len(keep), :total] = tab[keep, :total]
    tab2[: len(keep), -1] = tab[keep, -1]
    basis2 = [basis[r] for r in keep]
    tab2[-1, :n] = c
    for r, var in enumerate(basis2):  # price out the phase-2 objective
        tab2[-1] -= tab2[-1, var] * tab2[r]
    status = _run_simplex(tab2, basis2, total)
    if status != "optimal":
        return LPResult(status, None, None)
    x = np.zeros(total)
    for r, var in enumerate(basis2):
        x[var] = tab2[r, -1]
    return LPResult("optimal", x[:n], float(c @ x[:n]))
