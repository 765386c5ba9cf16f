"""Solver backend registry.

``reference`` (the built-in simplex + branch-and-bound) is always
available and is the default; ``highs`` wraps SciPy's HiGHS interface.
Select the default with the ``SOLVER_BACKEND`` environment variable.
"""
import logging
import math
import time

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import ConfigurationError

from .branch_and_bound import MilpParams, solve_milp
from .model import EQ, GE, LE, MAXIMIZE
from .results import SolveResult, SolveStatus

logger = logging.getLogger(__name__)

_BACKENDS = {}


def register_backend(name, solver):
    """Register ``solver(model, params) -> SolveResult`` under ``name``."""
    _BACKENDS[name] = solver
    return solver


def get_backend(name):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ConfigurationError(
            f'solver backend {name!r} is not registered; available: {available_backends()}'
        ) from None


def available_backends():
    return sorted(_BACKENDS)


def reference_backend(model, params):
    return solve_milp(model, params)


def _scipy_bounds(values):
    return [None if math.isinf(v) else v for v in values]


def _highs_lp(model, c, A, senses, b, lb, ub, sign):
    senses = np.array(senses)
    ub_rows = senses != EQ
    row_sign = np.where(senses == GE, -1.0, 1.0)
    A_ub, b_ub = (A * row_sign[:, None])[ub_rows], (b * row_sign)[ub_rows]
    A_eq, b_eq = A[senses == EQ], b[senses == EQ]
    res = linprog(
        sign * c,
        A_ub=A_ub if A_ub.size else None,
        b_ub=b_ub if A_ub.size else None,
        A_eq=A_eq if A_eq.size else None,
        b_eq=b_eq if A_eq.size else None,
        bounds=list(zip(_scipy_bounds(lb), _scipy_bounds(ub))),
        method='highs',
    )
    if res.status == 2:
        return SolveResult(SolveStatus.INFEASIBLE, message=res.message)
    if res.status == 3:
        return SolveResult(SolveStatus.UNBOUNDED, message=res.message)
    if res.status != 0:
        return SolveResult(SolveStatus.LIMIT_REACHED, message=res.message)

    duals = np.zeros(len(b))
    if A_ub.size:
        duals[ub_rows] = res.ineqlin.marginals * row_sign[ub_rows]
    if A_eq.size:
        duals[senses == EQ] = res.eqlin.marginals
    finite_lb, finite_ub = np.isfinite(lb), np.isfinite(ub)
    internal_dual = float(
        (res.ineqlin.marginals @ b_ub if A_ub.size else 0.0)
        + (res.eqlin.marginals @ b_eq if A_eq.size else 0.0)
        + res.lower.marginals[finite_lb] @ lb[finite_lb]
        + res.upper.marginals[finite_ub] @ ub[finite_ub]
    )
    return SolveResult(
        SolveStatus.OPTIMAL,
        objective=sign * res.fun,
        values=np.asarray(res.x),
        duals=sign * duals,
        dual_objective=sign * internal_dual,
        bound=sign * res.fun,
        iterations=int(getattr(res, 'nit', 0)),
    )


def _milp_status(highs_status, objective, bound, params):
    if highs_status == 0:
        return SolveStatus.OPTIMAL
    # HiGHS itself only stops on mip_rel_gap; abs_gap is applied to what it returns
    if bound is not None and abs(objective - bound) <= params.tolerance(objective):
        return SolveStatus.OPTIMAL
    return SolveStatus.FEASIBLE_WITH_GAP


def _highs_milp(model, c, A, senses, b, lb, ub, sign, params):
    senses = np.array(senses)
    constraints = ()
    if A.size:
        lower = np.where(senses == LE, -np.inf, b)
        upper = np.where(senses == GE, np.inf, b)
        constraints = LinearConstraint(A, lower, upper)
    integrality = np.zeros(model.num_vars)
    integrality[model.integer_indices] = 1
    options = {'disp': False, 'mip_rel_gap': params.rel_gap, 'node_limit': params.node_limit}
    if params.time_limit is not None:
        options['time_limit'] = params.time_limit
    res = milp(sign * c, constraints=constraints, integrality=integrality, bounds=Bounds(lb, ub), options=options)
    bound = getattr(res, 'mip_dual_bound', None)
    common = {
        'nodes': int(getattr(res, 'mip_node_count', 0) or 0),
        'bound': None if bound is None else sign * bound,
        'message': res.message,
    }
    if res.status == 2:
        return SolveResult(SolveStatus.INFEASIBLE, **common)
    if res.status == 3:
        return SolveResult(SolveStatus.UNBOUNDED, **common)
    if res.x is None:
        return SolveResult(SolveStatus.LIMIT_REACHED, **common)
    values = np.asarray(res.x, dtype=float)
    values[model.integer_indices] = np.round(values[model.integer_indices])
    objective = model.objective_value(values)
    status = _milp_status(res.status, objective, common['bound'], params)
    return SolveResult(status, objective=objective, values=values, **common)


def highs_backend(model, params):
    c, A, senses, b, lb, ub = model.to_arrays()
    sign = -1.0 if model.sense == MAXIMIZE else 1.0
    if model.is_mip:
        return _highs_milp(model, c, A, senses, b, lb, ub, sign, params)
    return _highs_lp(model, c, A, senses, b, lb, ub, sign)


register_backend('reference', reference_backend)
register_backend('highs', highs_backend)


def external_backend(model, name, params=None):
    """Solve with the registered backend ``name``; the result is tagged with it."""
    solver = get_backend(name)
    start = time.perf_counter()
    result = solver(model, params or MilpParams())
    result.backend = name
    result.seconds = result.seconds or time.perf_counter() - start
    return result


def solve(model, params=None, backend=None):
    """Solve with ``backend`` or the configured default backend."""
    backend = backend or app_setting('SOLVER_BACKEND')
    result = external_backend(model, backend, params)
    logger.debug('%s via %s: %s', model.name, backend, result.status)
    return result
