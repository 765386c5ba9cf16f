"""Blocking nodes and edges under one budget.

Edge ``e`` gets a binary ``z_e`` (one per arc on directed graphs, one per
edge shared by both arcs otherwise), a binary ``k_e`` forbidding blocked
edges next to blocked nodes, and one ``b`` per arc standing for
``alpha_j (1 - z_e)`` in the attacker's dual.
"""
import logging
import math

from adversary.br_milp import best_response_lp
from adversary.objective import check_budget, node_weights
from influence_blocking.exceptions import ParameterError
from netgraph.sets import BlockSet
from optikit.model import BINARY, GE, LE, MINIMIZE, MilpModel

from .def_milp import add_dual_block, add_w_rows, big_m, check_consistency, solve_defense_model
from .results import DefenseResult, EdgeNodePlan, canonical_edge

logger = logging.getLogger(__name__)


def _check_costs(c_n, c_e, B_D):
    if not (c_n > 0 and c_e > 0):
        raise ParameterError(f'blocking costs must be positive, got c_n={c_n}, c_e={c_e}')
    if B_D < 0 or not math.isfinite(B_D):
        raise ParameterError(f'budget must be finite and nonnegative, got {B_D}')


def build_ev_milp(graph, c_n, c_e, B_D, k_A, mu=None, M=None):
    _check_costs(c_n, c_e, B_D)
    k_A = check_budget('k_A', k_A)
    mu = node_weights(graph, mu)
    M = big_m(graph, mu) if M is None else float(M)
    coupling_m = max(M, 1.0)
    edges_allowed = c_e <= B_D

    model = MilpModel(name='ev-milp', sense=MINIMIZE)
    lambda0, q, alpha, beta, gamma = add_dual_block(model, graph, k_A)
    x = [model.add_var(f'x[{i}]', kind=BINARY, tag=('x', i)) for i in range(graph.n)]
    for i in range(graph.n):
        w = model.add_var(f'w[{i}]', tag=('w', i), obj=1.0)
        add_w_rows(model, i, w, q[i], x[i], M)
        coverage = {alpha[i]: 1.0, gamma[i]: 1.0}
        if mu[i]:
            coverage[x[i]] = mu[i]
        model.add_constraint(coverage, GE, mu[i], name=f'cover[{i}]')

    z = {}
    if edges_allowed:
        for u, v in graph.edges():
            e = (u, v)
            z[e] = model.add_var(f'z[{u},{v}]', kind=BINARY, tag=('z', u, v))
            k = model.add_var(f'k[{u},{v}]', kind=BINARY, tag=('k', u, v))
            model.add_constraint({z[e]: 1.0, k: -coupling_m}, LE, 0.5, name=f'couple_edge[{u},{v}]')
            model.add_constraint({x[u]: 1.0, k: coupling_m}, LE, coupling_m + 0.5, name=f'couple_tail[{u},{v}]')
            model.add_constraint({x[v]: 1.0, k: coupling_m}, LE, coupling_m + 0.5, name=f'couple_head[{u},{v}]')

    budget = {i: c_n for i in x}
    budget.update({index: c_e for index in z.values()})
    model.add_constraint(budget, LE, B_D, name='defense_budget')

    for i in range(graph.n):
        coeffs = {lambda0: 1.0, q[i]: 1.0, beta[i]: 1.0, alpha[i]: -1.0}
        for j in graph.out_adj[i]:
            if not edges_allowed:
                coeffs[alpha[j]] = coeffs.get(alpha[j], 0.0) - 1.0
                continue
            edge = z[canonical_edge(graph, i, j)]
            b = model.add_var(f'b[{i},{j}]', tag=('b', i, j))
            coeffs[b] = -1.0
            model.add_constraint({b: 1.0, edge: M}, LE, M, name=f'b_off[{i},{j}]')
            model.add_constraint({b: 1.0, edge: -M}, GE, -M, name=f'b_off_lower[{i},{j}]')
            model.add_constraint({b: 1.0, alpha[j]: -1.0, edge: -M}, LE, 0.0, name=f'b_on_upper[{i},{j}]')
            model.add_constraint({b: 1.0, alpha[j]: -1.0, edge: M}, GE, 0.0, name=f'b_on[{i},{j}]')
        model.add_constraint(coeffs, GE, 0.0, name=f'seed[{i}]')
    return model


def ev_defense(graph, c_n, c_e, B_D, k_A, mu=None, params=None, backend=None):
    """Solve the node-and-edge blocking MILP; the plan sits in ``result.plan``."""
    _check_costs(c_n, c_e, B_D)
    k_A = check_budget('k_A', k_A)
    run_params = {'c_n': c_n, 'c_e': c_e, 'B_D': B_D, 'k_A': k_A}
    if B_D < min(c_n, c_e) or k_A == 0:
        plan = EdgeNodePlan(BlockSet.of(()), (), c_n, c_e, B_D)
        bound = best_response_lp(graph, (), k_A, mu, params, backend)
        return DefenseResult(plan.nodes, bound, 'ev-milp', run_params, plan=plan)

    M = big_m(graph, mu)
    model = build_ev_milp(graph, c_n, c_e, B_D, k_A, mu, M)
    result = solve_defense_model(model, params, backend)
    nodes = [i for i in range(graph.n) if result.values[model.var(('x', i))] > 0.5]
    edges = [
        (u, v) for u, v in graph.edges()
        if ('z', u, v) in model.tags and result.values[model.var(('z', u, v))] > 0.5
    ]
    plan = EdgeNodePlan(BlockSet.of(nodes), tuple(edges), c_n, c_e, B_D)
    relaxed = best_response_lp(plan.apply(graph), nodes, k_A, mu, params, backend)
    check_consistency(result, relaxed, 'ev-milp')
    logger.debug('ev-milp blocked nodes %s and edges %s, bound %.6f', nodes, edges, result.objective)
    return DefenseResult(
        plan.nodes,
        float(result.objective),
        'ev-milp',
        run_params,
        {**result.summary(), 'big_m': M, 'relaxed_best_response': relaxed, 'cost': plan.cost},
        plan=plan,
    )
