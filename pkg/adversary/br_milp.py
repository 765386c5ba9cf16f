"""The attacker's best-response MILP and its LP relaxation.

``y_i`` picks seeds, ``t_i`` records whether node ``i`` is dominated.
``t`` stays continuous: with binary ``y`` every optimal ``t_i`` sits at
``min(1, seeds dominating i)``.
"""
import logging
from dataclasses import dataclass

from influence_blocking.exceptions import SolverError
from netgraph.sets import SeedSet, as_block
from optikit.backends import solve
from optikit.model import BINARY, LE, MAXIMIZE, MilpModel

from .objective import AttackOutcome, check_budget, eval_F, node_weights

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BrMilpVars:
    y: tuple
    t: tuple

    @classmethod
    def of(cls, model, n):
        return cls(
            y=tuple(model.var(('y', i)) for i in range(n)),
            t=tuple(model.var(('t', i)) for i in range(n)),
        )


def build_br_milp(graph, x, k_A, mu=None):
    x = as_block(x).check_within(graph)
    k_A = check_budget('k_A', k_A)
    mu = node_weights(graph, mu)
    blocked = [1.0 if i in x else 0.0 for i in range(graph.n)]

    model = MilpModel(name='br-milp', sense=MAXIMIZE)
    y = [model.add_var(f'y[{i}]', kind=BINARY, tag=('y', i)) for i in range(graph.n)]
    t = [
        model.add_var(f't[{i}]', ub=1.0, tag=('t', i), obj=mu[i] * (1.0 - blocked[i]))
        for i in range(graph.n)
    ]
    for i in range(graph.n):
        model.add_constraint({y[i]: 1.0}, LE, 1.0 - blocked[i], name=f'unblocked[{i}]')
    model.add_constraint({j: 1.0 for j in y}, LE, k_A, name='attack_budget')
    for i in range(graph.n):
        coeffs = {t[i]: 1.0}
        for j in graph.closed_in(i):
            coeffs[y[j]] = -1.0
        model.add_constraint(coeffs, LE, 0.0, name=f'cover[{i}]')
    return model


def best_response_milp(graph, x, k_A, mu=None, params=None, backend=None):
    """Optimal seed set against the blocked nodes ``x``.

    ``value`` is the exact domination weight of the returned seeds; when the
    solver stops on a limit the result carries its status and bound.
    """
    x = as_block(x).check_within(graph)
    k_A = check_budget('k_A', k_A)
    if k_A == 0:
        return AttackOutcome(SeedSet.of(()), 0.0, 'br-milp', {'status': 'Optimal', 'bound': 0.0})

    model = build_br_milp(graph, x, k_A, mu)
    result = solve(model, params, backend)
    if not result.has_solution:
        raise SolverError(f'best-response MILP ended {result.status}: {result.message}')
    variables = BrMilpVars.of(model, graph.n)
    seeds = [i for i in range(graph.n) if result.values[variables.y[i]] > 0.5]
    value = eval_F(graph, x, seeds, mu)
    logger.debug('best response to %s: seeds %s value %.6f', x.sorted(), seeds, value)
    return AttackOutcome(
        SeedSet.of(seeds, budget=k_A),
        value,
        'br-milp',
        result.summary(),
    )


def best_response_lp(graph, x, k_A, mu=None, params=None, backend=None):
    """Optimum of the LP relaxation of :func:`build_br_milp` (``M_LP``)."""
    if check_budget('k_A', k_A) == 0:
        return 0.0
    result = solve(build_br_milp(graph, x, k_A, mu).relaxed(), params, backend)
    if not result.optimal:
        raise SolverError(f'best-response LP ended {result.status}: {result.message}')
    return float(result.objective)
