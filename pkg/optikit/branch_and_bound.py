"""Best-bound branch-and-bound over :func:`optikit.simplex.solve_lp` relaxations."""
import heapq
import itertools
import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import ParameterError

from .model import MAXIMIZE
from .results import SolveResult, SolveStatus
from .simplex import solve_lp

logger = logging.getLogger(__name__)

INTEGRALITY_TOL = 1e-6


@dataclass(frozen=True)
class MilpParams:
    """Termination criteria; ``None`` fields fall back to the project settings."""

    abs_gap: float = None
    rel_gap: float = None
    node_limit: int = None
    time_limit: float = None

    def __post_init__(self):
        defaults = {
            'abs_gap': 'MILP_ABS_GAP',
            'rel_gap': 'MILP_REL_GAP',
            'node_limit': 'MILP_NODE_LIMIT',
            'time_limit': 'MILP_TIME_LIMIT',
        }
        for attr, setting in defaults.items():
            if getattr(self, attr) is None:
                object.__setattr__(self, attr, app_setting(setting))
        if self.abs_gap < 0 or self.rel_gap < 0:
            raise ParameterError('MILP gaps must be nonnegative')
        if self.node_limit < 1:
            raise ParameterError(f'node limit must be positive, got {self.node_limit}')

    def tolerance(self, incumbent):
        return max(self.abs_gap, self.rel_gap * abs(incumbent))


def _most_fractional(values, integer_indices):
    best, best_distance = None, INTEGRALITY_TOL
    for j in integer_indices:
        fraction = values[j] - math.floor(values[j])
        distance = min(fraction, 1.0 - fraction)
        # strict comparison keeps the lowest index on ties
        if distance > best_distance:
            best, best_distance = j, distance
    return best


def solve_milp(model, params=None):
    """Solve ``model`` to optimality or until a limit in ``params`` is hit.

    Nodes are explored in best-bound order (ties in creation order) and
    branch on the most fractional integer variable.  A model without
    integer variables is handed straight to :func:`solve_lp`.
    """
    params = params or MilpParams()
    if not model.is_mip:
        return solve_lp(model)

    start = time.perf_counter()
    # internally everything is minimised
    sign = -1.0 if model.sense == MAXIMIZE else 1.0
    integers = model.integer_indices
    lb = np.array([v.lb for v in model.variables])
    ub = np.array([v.ub for v in model.variables])

    counter = itertools.count()
    root = solve_lp(model, lb, ub)
    iterations = root.iterations
    if root.status != SolveStatus.OPTIMAL:
        root.seconds = time.perf_counter() - start
        return root

    heap = [(sign * root.objective, next(counter), lb, ub, root)]
    incumbent_key, incumbent_values = math.inf, None
    nodes = 0
    limit = None
    unresolved = math.inf

    while heap:
        key, _, node_lb, node_ub, relaxation = heap[0]
        if incumbent_values is not None and incumbent_key - key <= params.tolerance(incumbent_key):
            break
        if nodes >= params.node_limit:
            limit = 'node limit'
            break
        if params.time_limit is not None and time.perf_counter() - start > params.time_limit:
            limit = 'time limit'
            break
        heapq.heappop(heap)
        nodes += 1

        values = relaxation.values
        branch = _most_fractional(values, integers)
        if branch is None:
            candidate = values.copy()
            candidate[integers] = np.round(candidate[integers])
            candidate_key = sign * model.objective_value(candidate)
            if candidate_key < incumbent_key:
                incumbent_key, incumbent_values = candidate_key, candidate
                logger.debug('node %d: new incumbent %.6f', nodes, sign * candidate_key)
            continue

        down_ub = node_ub.copy()
        down_ub[branch] = math.floor(values[branch])
        up_lb = node_lb.copy()
        up_lb[branch] = math.ceil(values[branch])
        for child_lb, child_ub in ((node_lb, down_ub), (up_lb, node_ub)):
            child = solve_lp(model, child_lb, child_ub)
            iterations += child.iterations
            if child.status == SolveStatus.OPTIMAL:
                child_key = sign * child.objective
                if child_key < incumbent_key:
                    heapq.heappush(heap, (child_key, next(counter), child_lb, child_ub, child))
            elif child.status == SolveStatus.LIMIT_REACHED:
                limit = f'node relaxation: {child.message}'
        if limit:
            unresolved = key
            break

    bound_key = heap[0][0] if heap else incumbent_key
    bound_key = min(bound_key, incumbent_key, unresolved)
    seconds = time.perf_counter() - start

    if incumbent_values is None:
        status = SolveStatus.LIMIT_REACHED if limit else SolveStatus.INFEASIBLE
        return SolveResult(
            status, bound=None if math.isinf(bound_key) else sign * bound_key, nodes=nodes,
            iterations=iterations, seconds=seconds, message=limit or 'no integral point',
        )

    closed = incumbent_key - bound_key <= params.tolerance(incumbent_key)
    status = SolveStatus.OPTIMAL if closed else SolveStatus.FEASIBLE_WITH_GAP
    logger.debug(
        'MILP %s: %s after %d nodes, objective %.6f bound %.6f',
        model.name, status, nodes, sign * incumbent_key, sign * bound_key,
    )
    return SolveResult(
        status,
        objective=sign * incumbent_key,
        values=incumbent_values,
        bound=sign * bound_key,
        nodes=nodes,
        iterations=iterations,
        seconds=seconds,
        message='' if closed else (limit or ''),
    )
