"""The defender's single-level MILP.

The attacker's best-response LP is dualized and the products
``(1 - x_i) q_i`` are replaced by ``w_i`` with big-M rows, giving a
minimization over blocks ``x`` and the dual variables ``lambda0, q,
alpha, beta, gamma``.  A node ``i`` seeded by the attacker covers
``{i} + out(i)``, so its dual row sums ``alpha`` over that set while the
coverage rows of ``t`` look at dominators.
"""
import logging
from dataclasses import dataclass

import numpy as np

from adversary.br_milp import best_response_lp
from adversary.objective import check_budget, node_weights
from influence_blocking.exceptions import ParameterError, SolverError
from netgraph.centrality import centrality, rank_nodes
from netgraph.sets import BlockSet, as_block
from optikit.backends import solve
from optikit.model import BINARY, GE, LE, MINIMIZE, MilpModel

from .results import DefenseResult

logger = logging.getLogger(__name__)

CONSISTENCY_TOL = 1e-5
PRUNING_ORDERS = ('degree', 'wdom')


def big_m(graph, mu=None):
    """Largest weight a single seed can dominate; bounds every optimal ``q_i``."""
    mu = node_weights(graph, mu)
    if graph.n == 0:
        return 1.0
    value = max(float(mu[list(graph.closed_out(i))].sum()) for i in range(graph.n))
    return value if value > 0 else 1.0


def wdom_scores(graph, mu=None):
    """Weight of each node's dominators: ``sum(mu[i] for i in closed_in(j))``."""
    mu = node_weights(graph, mu)
    return np.array([mu[list(graph.closed_in(j))].sum() for j in range(graph.n)])


@dataclass(frozen=True)
class DefMilpVars:
    x: dict
    lambda0: int
    q: tuple
    alpha: tuple
    beta: tuple
    gamma: tuple
    w: dict
    big_m: float

    @classmethod
    def of(cls, model, n, big_m):
        def optional(name):
            return {i: model.var((name, i)) for i in range(n) if (name, i) in model.tags}

        def full(name):
            return tuple(model.var((name, i)) for i in range(n))

        return cls(
            x=optional('x'),
            lambda0=model.var(('lambda0',)),
            q=full('q'),
            alpha=full('alpha'),
            beta=full('beta'),
            gamma=full('gamma'),
            w=optional('w'),
            big_m=big_m,
        )


def add_dual_block(model, graph, k_A):
    """Dual variables of the best-response LP; ``beta`` and ``gamma`` are priced at 1."""
    n = graph.n
    lambda0 = model.add_var('lambda0', tag=('lambda0',), obj=k_A)
    q = [model.add_var(f'q[{i}]', tag=('q', i)) for i in range(n)]
    alpha = [model.add_var(f'alpha[{i}]', tag=('alpha', i)) for i in range(n)]
    beta = [model.add_var(f'beta[{i}]', tag=('beta', i), obj=1.0) for i in range(n)]
    gamma = [model.add_var(f'gamma[{i}]', tag=('gamma', i), obj=1.0) for i in range(n)]
    return lambda0, q, alpha, beta, gamma


def add_seed_rows(model, graph, lambda0, q, alpha, beta):
    for i in range(graph.n):
        coeffs = {lambda0: 1.0, q[i]: 1.0, beta[i]: 1.0}
        for j in graph.closed_out(i):
            coeffs[alpha[j]] = coeffs.get(alpha[j], 0.0) - 1.0
        model.add_constraint(coeffs, GE, 0.0, name=f'seed[{i}]')


def add_w_rows(model, i, w, q, x, M):
    model.add_constraint({w: 1.0, x: M}, LE, M, name=f'w_off[{i}]')
    model.add_constraint({w: 1.0, x: -M}, GE, -M, name=f'w_off_lower[{i}]')
    model.add_constraint({w: 1.0, q: -1.0, x: M}, GE, 0.0, name=f'w_on[{i}]')
    model.add_constraint({w: 1.0, q: -1.0, x: -M}, LE, 0.0, name=f'w_on_upper[{i}]')


def add_node_blocking(model, graph, mu, candidates, M, alpha, gamma, q):
    """``x_i``/``w_i`` for the candidates plus the coverage rows for every node.

    Non-candidates are never blocked, so their ``(1 - x_i) q_i`` is just
    ``q_i`` and goes straight into the objective.
    """
    x = {}
    for i in range(graph.n):
        if i in candidates:
            x[i] = model.add_var(f'x[{i}]', kind=BINARY, tag=('x', i))
            w = model.add_var(f'w[{i}]', tag=('w', i), obj=1.0)
            add_w_rows(model, i, w, q[i], x[i], M)
            coverage = {alpha[i]: 1.0, gamma[i]: 1.0}
            if mu[i]:
                coverage[x[i]] = mu[i]
            model.add_constraint(coverage, GE, mu[i], name=f'cover[{i}]')
        else:
            model.objective[q[i]] = 1.0
            model.add_constraint({alpha[i]: 1.0, gamma[i]: 1.0}, GE, mu[i], name=f'cover[{i}]')
    return x


def build_def_milp(graph, k_D, k_A, mu=None, M=None, candidates=None):
    """DEF-MILP (DEF-WMILP for non-unit ``mu``) restricted to ``candidates``."""
    k_D = check_budget('k_D', k_D)
    k_A = check_budget('k_A', k_A)
    if k_D > graph.n:
        raise ParameterError(f'k_D={k_D} exceeds the {graph.n} nodes of the graph')
    mu = node_weights(graph, mu)
    M = big_m(graph, mu) if M is None else float(M)
    candidates = set(range(graph.n)) if candidates is None else {graph.check_node(i) for i in candidates}

    model = MilpModel(name='def-milp', sense=MINIMIZE)
    lambda0, q, alpha, beta, gamma = add_dual_block(model, graph, k_A)
    x = add_node_blocking(model, graph, mu, candidates, M, alpha, gamma, q)
    model.add_constraint({x[i]: 1.0 for i in sorted(x)}, LE, k_D, name='defense_budget')
    add_seed_rows(model, graph, lambda0, q, alpha, beta)
    return model


def build_br_dual(graph, x, k_A, mu=None):
    """Dual of the best-response LP with the blocks ``x`` fixed."""
    x = as_block(x).check_within(graph)
    k_A = check_budget('k_A', k_A)
    mu = node_weights(graph, mu)
    model = MilpModel(name='br-dual', sense=MINIMIZE)
    lambda0, q, alpha, beta, gamma = add_dual_block(model, graph, k_A)
    for i in range(graph.n):
        unblocked = 0.0 if i in x else 1.0
        if unblocked:
            model.objective[q[i]] = 1.0
        model.add_constraint({alpha[i]: 1.0, gamma[i]: 1.0}, GE, mu[i] * unblocked, name=f'cover[{i}]')
    add_seed_rows(model, graph, lambda0, q, alpha, beta)
    return model


def solve_defense_model(model, params, backend):
    result = solve(model, params, backend)
    if not result.has_solution:
        raise SolverError(f'{model.name} ended {result.status}: {result.message}')
    return result


def check_consistency(result, relaxed_value, method):
    """The MILP bound must equal the relaxed best response at the chosen blocks."""
    bound = result.objective
    if result.optimal and abs(bound - relaxed_value) > CONSISTENCY_TOL * (1.0 + abs(bound)):
        raise SolverError(
            f'{method}: model bound {bound:.9f} disagrees with BR-LP value {relaxed_value:.9f}'
        )
    if not result.optimal:
        logger.warning('%s stopped with %s; bound %.6f, BR-LP %.6f', method, result.status, bound, relaxed_value)


def def_milp(graph, k_D, k_A, mu=None, params=None, backend=None, candidates=None, method='def-milp'):
    k_D = check_budget('k_D', k_D)
    k_A = check_budget('k_A', k_A)
    if k_D > graph.n:
        raise ParameterError(f'k_D={k_D} exceeds the {graph.n} nodes of the graph')
    run_params = {'k_D': k_D, 'k_A': k_A}
    if k_A == 0:
        return DefenseResult(BlockSet.of((), budget=k_D), 0.0, method, run_params)
    if k_D == 0:
        bound = best_response_lp(graph, (), k_A, mu, params, backend)
        return DefenseResult(BlockSet.of((), budget=0), bound, method, run_params)

    M = big_m(graph, mu)
    model = build_def_milp(graph, k_D, k_A, mu, M, candidates)
    result = solve_defense_model(model, params, backend)
    variables = DefMilpVars.of(model, graph.n, M)
    blocked = sorted(i for i, index in variables.x.items() if result.values[index] > 0.5)
    relaxed = best_response_lp(graph, blocked, k_A, mu, params, backend)
    check_consistency(result, relaxed, method)
    logger.debug('%s blocked %s with bound %.6f', method, blocked, result.objective)
    return DefenseResult(
        BlockSet.of(blocked, budget=k_D),
        float(result.objective),
        method,
        run_params,
        {**result.summary(), 'big_m': M, 'relaxed_best_response': relaxed},
    )


def pruned_milp(graph, k_D, k_A, mu=None, l_d=None, order='degree', params=None, backend=None):
    """DEF-MILP over the ``l_d`` highest-ranked nodes only."""
    if l_d is None or l_d < k_D:
        raise ParameterError(f'candidate set size l_d={l_d} must be at least k_D={k_D}')
    if order == 'degree':
        scores = centrality(graph, 'degree')
    elif order == 'wdom':
        scores = wdom_scores(graph, mu)
    else:
        raise ParameterError(f'unknown pruning order {order!r}; expected one of {PRUNING_ORDERS}')
    candidates = rank_nodes(scores)[:l_d]
    result = def_milp(graph, k_D, k_A, mu, params, backend, candidates=candidates, method=f'pruned-{order}')
    result.params.update({'l_d': l_d, 'order': order})
    result.diagnostics['candidates'] = sorted(candidates)
    return result
