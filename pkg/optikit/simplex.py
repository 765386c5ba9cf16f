"""Dense-tableau two-phase primal simplex with dual extraction.

Variables are shifted to their lower bounds (or mirrored at their upper
bound), finite ranges become explicit rows and fixed variables drop out as
constants.  Dantzig pricing is used until a run of degenerate pivots
suggests cycling, after which Bland's rule takes over.  Duals are read off
the reduced costs of each row's initial unit column.
"""
import logging
import math
import time

import numpy as np

from .model import EQ, GE, LE, MAXIMIZE
from .results import SolveResult, SolveStatus

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
FEASIBILITY_TOL = 1e-7
DEGENERATE_STREAK = 50


class _Tableau:
    def __init__(self, matrix, basis, allowed):
        self.matrix = matrix
        self.basis = basis
        self.allowed = allowed
        self.iterations = 0
        self.bland = False

    @property
    def rows(self):
        return self.matrix.shape[0] - 1

    def pivot(self, row, col):
        matrix = self.matrix
        matrix[row] /= matrix[row, col]
        column = matrix[:, col].copy()
        column[row] = 0.0
        matrix -= np.outer(column, matrix[row])
        self.basis[row] = col
        self.iterations += 1

    def _entering(self):
        reduced = self.matrix[-1, :-1]
        candidates = np.flatnonzero(self.allowed & (reduced < -PIVOT_TOL))
        if candidates.size == 0:
            return None
        if self.bland:
            return int(candidates[0])
        return int(candidates[np.argmin(reduced[candidates])])

    def _leaving(self, col):
        column = self.matrix[:-1, col]
        rhs = self.matrix[:-1, -1]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            return None, 0.0
        ratios = rhs[rows] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL]
        # lowest basic variable index among ties
        row = int(min(ties, key=lambda r: self.basis[r]))
        return row, best

    def run(self, max_iter):
        """Optimise the current objective row; returns 'optimal', 'unbounded' or 'limit'."""
        streak = 0
        while True:
            if self.iterations >= max_iter:
                return 'limit'
            col = self._entering()
            if col is None:
                return 'optimal'
            row, step = self._leaving(col)
            if row is None:
                return 'unbounded'
            if step <= PIVOT_TOL:
                streak += 1
                if streak >= DEGENERATE_STREAK and not self.bland:
                    logger.debug('engaging Bland rule after %d degenerate pivots', streak)
                    self.bland = True
            else:
                streak = 0
            self.pivot(row, col)
            if not np.isfinite(self.matrix[-1, -1]):
                return 'numerical'


def _standard_form(model, lb, ub):
    c, A, senses, b, _, _ = model.to_arrays()
    internal_c = -c if model.sense == MAXIMIZE else c
    n = model.num_vars
    offset = np.zeros(n)
    columns = []
    range_rows = []
    for j in range(n):
        low, high = lb[j], ub[j]
        if math.isfinite(low) and low == high:
            offset[j] = low
        elif math.isfinite(low):
            offset[j] = low
            columns.append((j, 1.0))
            if math.isfinite(high):
                range_rows.append((len(columns) - 1, high - low))
        elif math.isfinite(high):
            offset[j] = high
            columns.append((j, -1.0))
        else:
            columns.append((j, 1.0))
            columns.append((j, -1.0))

    transform = np.zeros((n, len(columns)))
    for k, (j, sign) in enumerate(columns):
        transform[j, k] = sign

    rows = A @ transform
    rhs = b - A @ offset
    if range_rows:
        extra = np.zeros((len(range_rows), len(columns)))
        for r, (k, width) in enumerate(range_rows):
            extra[r, k] = 1.0
        rows = np.vstack([rows, extra])
        rhs = np.concatenate([rhs, [width for _, width in range_rows]])
        senses = list(senses) + [LE] * len(range_rows)
    return {
        'rows': rows,
        'rhs': rhs,
        'senses': list(senses),
        'cost': internal_c @ transform,
        'constant': float(internal_c @ offset),
        'transform': transform,
        'offset': offset,
        'structural': model.num_constraints,
    }


def solve_lp(model, lb=None, ub=None, max_iter=None):
    """Solve the LP relaxation of ``model`` (binaries relaxed to [0, 1]).

    ``lb``/``ub`` override the model bounds (branch-and-bound passes node
    bounds this way).  Duals are reported per structural row as the
    derivative of the optimal objective with respect to the row's rhs.
    """
    start = time.perf_counter()
    lb = np.array([v.lb for v in model.variables]) if lb is None else np.asarray(lb, dtype=float)
    ub = np.array([v.ub for v in model.variables]) if ub is None else np.asarray(ub, dtype=float)
    if np.any(lb > ub + FEASIBILITY_TOL):
        return SolveResult(SolveStatus.INFEASIBLE, message='crossed bounds', seconds=time.perf_counter() - start)

    form = _standard_form(model, lb, ub)
    rows, rhs, senses = form['rows'], form['rhs'], form['senses']
    m, ns = rows.shape if rows.size else (len(rhs), form['cost'].size)
    flip = np.where(rhs < 0, -1.0, 1.0)
    rows = rows * flip[:, None] if m else rows.reshape(0, ns)
    rhs = rhs * flip
    senses = [
        sense if f > 0 else {LE: GE, GE: LE, EQ: EQ}[sense]
        for sense, f in zip(senses, flip)
    ]

    slack_rows = [i for i, s in enumerate(senses) if s != EQ]
    artificial_rows = [i for i, s in enumerate(senses) if s != LE]
    total = ns + len(slack_rows) + len(artificial_rows)
    matrix = np.zeros((m + 1, total + 1))
    matrix[:m, :ns] = rows
    matrix[:m, -1] = rhs
    unit_column = np.zeros(m, dtype=np.int64)
    basis = [0] * m
    for k, i in enumerate(slack_rows):
        col = ns + k
        matrix[i, col] = 1.0 if senses[i] == LE else -1.0
        if senses[i] == LE:
            unit_column[i] = col
            basis[i] = col
    artificial_start = ns + len(slack_rows)
    for k, i in enumerate(artificial_rows):
        col = artificial_start + k
        matrix[i, col] = 1.0
        unit_column[i] = col
        basis[i] = col

    allowed = np.ones(total, dtype=bool)
    max_iter = max_iter or max(1000, 50 * (m + total))
    tableau = _Tableau(matrix, basis, allowed)

    # Phase 1: minimise the sum of artificials.
    if artificial_rows:
        matrix[-1, artificial_start:total] = 1.0
        for i in artificial_rows:
            matrix[-1] -= matrix[i]
        outcome = tableau.run(max_iter)
        if outcome in ('limit', 'numerical'):
            return _limit(outcome, tableau, start)
        if -matrix[-1, -1] > FEASIBILITY_TOL * (1.0 + np.abs(rhs).max(initial=0.0)):
            return SolveResult(
                SolveStatus.INFEASIBLE, iterations=tableau.iterations,
                seconds=time.perf_counter() - start, message='phase 1 optimum is positive',
            )
        for row in range(m):
            if tableau.basis[row] >= artificial_start:
                candidates = np.flatnonzero(np.abs(matrix[row, :artificial_start]) > PIVOT_TOL)
                if candidates.size:
                    tableau.pivot(row, int(candidates[0]))
        allowed[artificial_start:] = False

    # Phase 2
    cost = np.zeros(total)
    cost[:ns] = form['cost']
    basic_cost = cost[tableau.basis]
    matrix[-1, :-1] = cost - basic_cost @ matrix[:m, :-1]
    matrix[-1, -1] = -basic_cost @ matrix[:m, -1]
    tableau.bland = False
    outcome = tableau.run(max_iter)
    if outcome in ('limit', 'numerical'):
        return _limit(outcome, tableau, start)
    if outcome == 'unbounded':
        return SolveResult(
            SolveStatus.UNBOUNDED, iterations=tableau.iterations,
            seconds=time.perf_counter() - start, message='entering column has no positive entry',
        )

    standard = np.zeros(total)
    standard[tableau.basis] = matrix[:m, -1]
    values = form['offset'] + form['transform'] @ standard[:ns]
    sign = -1.0 if model.sense == MAXIMIZE else 1.0

    internal_duals = -matrix[-1, unit_column] if m else np.zeros(0)
    row_duals = sign * flip * internal_duals
    internal_objective = -matrix[-1, -1] + form['constant']
    dual_objective = sign * (float(internal_duals @ rhs) + form['constant'])

    structural = form['structural']
    result = SolveResult(
        SolveStatus.OPTIMAL,
        objective=sign * internal_objective,
        values=values,
        duals=row_duals[:structural],
        dual_objective=dual_objective,
        iterations=tableau.iterations,
        seconds=time.perf_counter() - start,
    )
    result.bound = result.objective
    logger.debug('LP %s optimal in %d pivots, objective %.6f', model.name, tableau.iterations, result.objective)
    return result


def _limit(outcome, tableau, start):
    return SolveResult(
        SolveStatus.LIMIT_REACHED,
        iterations=tableau.iterations,
        seconds=time.perf_counter() - start,
        message='iteration limit' if outcome == 'limit' else 'numerical failure',
        diagnostics={'bland': tableau.bland, 'rows': tableau.rows},
    )
