"""Exhaustive best response used to check the solvers on small graphs."""
import itertools
import math

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import GuardError
from netgraph.sets import SeedSet, as_block

from .objective import AttackOutcome, check_budget, node_weights


def enumeration_size(candidates, k):
    return sum(math.comb(candidates, s) for s in range(min(k, candidates) + 1))


def coverage_masks(graph, x):
    """Bitmask of the unblocked nodes each node dominates."""
    unblocked = sum(1 << i for i in range(graph.n) if i not in x)
    return [sum(1 << j for j in graph.closed_out(v)) & unblocked for v in range(graph.n)]


def mask_value(mask, mu, unit):
    if unit:
        return float(bin(mask).count('1'))
    total = 0.0
    while mask:
        low = mask & -mask
        total += mu[low.bit_length() - 1]
        mask ^= low
    return total


def best_seeds(masks, candidates, k_A, mu, unit):
    """Lexicographically smallest seed tuple of maximal value, with its value."""
    best, best_value = (), 0.0
    for size in range(1, min(k_A, len(candidates)) + 1):
        for combo in itertools.combinations(candidates, size):
            mask = 0
            for v in combo:
                mask |= masks[v]
            value = mask_value(mask, mu, unit)
            if value > best_value or (value == best_value and combo < best):
                best, best_value = combo, value
    return best, best_value


def brute_force_br(graph, x, k_A, mu=None, limit=None):
    x = as_block(x).check_within(graph)
    k_A = check_budget('k_A', k_A)
    mu = node_weights(graph, mu)
    limit = app_setting('BRUTE_FORCE_BR_LIMIT') if limit is None else limit
    candidates = [i for i in range(graph.n) if i not in x]
    size = enumeration_size(len(candidates), k_A)
    if size > limit:
        raise GuardError(f'{size} seed sets exceed the brute-force limit of {limit}')

    unit = bool((mu == 1.0).all())
    seeds, value = best_seeds(coverage_masks(graph, x), candidates, k_A, mu, unit)
    return AttackOutcome(SeedSet.of(seeds, budget=k_A), value, 'brute-force', {'enumerated': size})
