"""Dense phase-1 simplex with Bland's rule: decides row-system feasibility."""

from __future__ import annotations

import numpy as np

PIVOT_EPS = 1e-10
COST_EPS = 1e-9
FEAS_TOL = 1e-7


class SolverStuck(RuntimeError):
    """Numerical failure or iteration blow-up; distinct from 'infeasible'."""


def phase_one_feasible(
    A: np.ndarray,
    relations: list[str],
    b: np.ndarray,
    max_iter: int = 200_000,
) -> np.ndarray | None:
    """Find x >= 0 with A x {<=,>=} b row-wise, or None if no such x exists.

    Minimizes the artificial-variable sum from the all-slack start with
    Bland's anti-cycling rule (entering: lowest eligible column; leaving:
    lowest basic variable among the ratio-test ties), so termination is
    guaranteed up to float tolerance.
    """
    m, n = A.shape
    A = A.astype(float).copy()
    b = b.astype(float).copy()
    sense = np.array([1 if r == "<=" else -1 for r in relations])

    # normalize rhs >= 0, then append one slack/surplus per row
    for i in range(m):
        if b[i] < 0:
            A[i] *= -1.0
            b[i] *= -1.0
            sense[i] *= -1
    ncols = n + m
    T = np.zeros((m, ncols))
    T[:, :n] = A
    for i in range(m):
        T[i, n + i] = 1.0 if sense[i] > 0 else -1.0

    # artificial basis where the slack cannot start feasible
    basis = np.empty(m, dtype=int)
    art_cols: list[int] = []
    for i in range(m):
        if sense[i] > 0:
            basis[i] = n + i
        else:
            art_cols.append(len(art_cols))
            basis[i] = ncols + len(art_cols) - 1
    if art_cols:
        art = np.zeros((m, len(art_cols)))
        j = 0
        for i in range(m):
            if sense[i] < 0:
                art[i, j] = 1.0
                j += 1
        T = np.hstack([T, art])
    ncols = T.shape[1]
    n_struct = n + m  # structural + slack columns; the rest are artificial

    # phase-1 reduced costs: z_j - c_j with c = 1 on artificials
    cost = np.zeros(ncols)
    cost[n_struct:] = 1.0
    obj = np.zeros(ncols + 1)
    for i in range(m):
        if basis[i] >= n_struct:
            obj[:ncols] += T[i]
            obj[ncols] += b[i]
    obj[:ncols] -= cost

    rhs = b.copy()
    for _ in range(max_iter):
        eligible = np.flatnonzero(obj[:ncols] > COST_EPS)
        if eligible.size == 0:
            break
        col = int(eligible[0])  # Bland: lowest index
        column = T[:, col]
        rows = np.flatnonzero(column > PIVOT_EPS)
        if rows.size == 0:
            raise SolverStuck("phase-1 objective unbounded; system is malformed")
        ratios = rhs[rows] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best * (1 + 1e-10) + 1e-12]
        row = int(ties[np.argmin(basis[ties])])  # Bland: lowest basic var

        piv = T[row, col]
        T[row] /= piv
        rhs[row] /= piv
        factor = T[:, col].copy()
        factor[row] = 0.0
        T -= np.outer(factor, T[row])
        rhs -= factor * rhs[row]
        obj_f = obj[col]
        obj[:ncols] -= obj_f * T[row]
        obj[ncols] -= obj_f * rhs[row]
        basis[row] = col
    else:
        raise SolverStuck(f"no convergence within {max_iter} pivots")

    if obj[ncols] > FEAS_TOL:
        return None
    x = np.zeros(ncols)
    x[basis] = rhs
    return x[:n]
