"""Exhaustive defenses for checking the MILP and constraint-generation solvers."""
import itertools
import math

from adversary.objective import check_budget, node_weights
from adversary.oracles import best_seeds, coverage_masks, enumeration_size
from influence_blocking.conf import app_setting
from influence_blocking.exceptions import GuardError, ParameterError
from netgraph.sets import BlockSet

from .results import DefenseResult, EdgeNodePlan


def _guard(size, limit):
    limit = app_setting('BRUTE_FORCE_DEFENSE_LIMIT') if limit is None else limit
    if size > limit:
        raise GuardError(f'{size} defense/attack pairs exceed the brute-force limit of {limit}')


def _exact_value(graph, blocked, k_A, mu, unit):
    candidates = [i for i in range(graph.n) if i not in blocked]
    _, value = best_seeds(coverage_masks(graph, blocked), candidates, k_A, mu, unit)
    return value


def brute_force_defense(graph, k_D, k_A, mu=None, limit=None):
    """Blocks minimising the exact best response; ties go to the lexicographically smallest set."""
    k_D = check_budget('k_D', k_D)
    k_A = check_budget('k_A', k_A)
    if k_D > graph.n:
        raise ParameterError(f'k_D={k_D} exceeds the {graph.n} nodes of the graph')
    mu = node_weights(graph, mu)
    _guard(enumeration_size(graph.n, k_D) * enumeration_size(graph.n, k_A), limit)

    unit = bool((mu == 1.0).all())
    best, best_value = None, math.inf
    for size in range(k_D + 1):
        for combo in itertools.combinations(range(graph.n), size):
            value = _exact_value(graph, set(combo), k_A, mu, unit)
            if value < best_value or (value == best_value and combo < best):
                best, best_value = combo, value
    return DefenseResult(
        BlockSet.of(best, budget=k_D), best_value, 'brute-force', {'k_D': k_D, 'k_A': k_A},
    )


def budget_feasible_plans(graph, c_n, c_e, B_D):
    """Every node/edge plan within budget whose edges avoid the blocked nodes."""
    edges = graph.edges()
    for a in range(min(graph.n, int(B_D // c_n)) + 1):
        for nodes in itertools.combinations(range(graph.n), a):
            blocked = set(nodes)
            free = [(u, v) for u, v in edges if u not in blocked and v not in blocked]
            room = int((B_D - a * c_n + 1e-9) // c_e)
            for b in range(min(len(free), room) + 1):
                for chosen in itertools.combinations(free, b):
                    yield nodes, chosen


def brute_force_ev_defense(graph, c_n, c_e, B_D, k_A, mu=None, limit=None):
    if not (c_n > 0 and c_e > 0) or B_D < 0:
        raise ParameterError('costs must be positive and the budget nonnegative')
    k_A = check_budget('k_A', k_A)
    mu = node_weights(graph, mu)
    plans = (
        enumeration_size(graph.n, int(B_D // c_n))
        * enumeration_size(graph.m, int(B_D // c_e))
        * enumeration_size(graph.n, k_A)
    )
    _guard(plans, limit)

    unit = bool((mu == 1.0).all())
    best, best_value = None, math.inf
    for nodes, chosen in budget_feasible_plans(graph, c_n, c_e, B_D):
        reduced = graph.remove_edges(chosen) if chosen else graph
        value = _exact_value(reduced, set(nodes), k_A, mu, unit)
        if value < best_value or (value == best_value and (nodes, chosen) < best):
            best, best_value = (nodes, chosen), value
    nodes, chosen = best
    plan = EdgeNodePlan(BlockSet.of(nodes), chosen, c_n, c_e, B_D)
    return DefenseResult(
        plan.nodes, best_value, 'brute-force-ev', {'c_n': c_n, 'c_e': c_e, 'B_D': B_D, 'k_A': k_A}, plan=plan,
    )
