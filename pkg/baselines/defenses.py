"""Heuristic defenses the exact methods are compared against.

Every ranking breaks ties by ascending node index, and every baseline
blocks ``min(k_D, n)`` nodes.
"""
import logging

from adversary.greedy import celf_im
from adversary.objective import check_budget
from blockade.def_milp import wdom_scores
from blockade.results import DefenseResult
from diffusion.live_edge import estimate_influence, replica_values, sample_live_edges
from influence_blocking.exceptions import ParameterError, UsageError
from netgraph.centrality import CENTRALITY_KINDS, centrality, rank_nodes
from netgraph.domination import block
from netgraph.rng import derive_seed, make_rng
from netgraph.sets import BlockSet, as_seeds

logger = logging.getLogger(__name__)

DEFENSE_KINDS = CENTRALITY_KINDS + ('influence',)


def top_k(scores, k_D, candidates=None):
    ranked = rank_nodes(scores, candidates)
    return BlockSet.of(ranked[:k_D], budget=k_D)


def influence_scores(graph, samples):
    """Estimated spread of every node seeded on its own."""
    samples.check_graph(graph)
    return [
        float(replica_values(samples, samples.local_nodes([v])).mean())
        for v in range(graph.n)
    ]


def centrality_defense(graph, k_D, kind, samples=None):
    k_D = check_budget('k_D', k_D)
    if kind == 'influence':
        if samples is None:
            raise UsageError('influence centrality needs a live-edge sample set')
        scores = influence_scores(graph, samples)
    elif kind in CENTRALITY_KINDS:
        scores = centrality(graph, kind)
    else:
        raise ParameterError(f'unknown centrality {kind!r}; expected one of {DEFENSE_KINDS}')
    return DefenseResult(top_k(scores, k_D), method=kind, params={'k_D': k_D})


def im_defense(graph, k_D, samples):
    """Block the seeds an influence maximizer with budget ``k_D`` would pick."""
    k_D = check_budget('k_D', k_D)
    outcome = celf_im(samples, (), min(k_D, graph.n), graph=graph)
    return DefenseResult(
        BlockSet.of(outcome.seeds.nodes, budget=k_D),
        method='im',
        params={'k_D': k_D},
        diagnostics={'spread': outcome.value},
    )


def greedy_blocking_defense(graph, k_D, fixed_seeds, spec):
    """Repeatedly block the node whose removal cuts the spread of ``fixed_seeds`` the most.

    Each round re-samples every shrunken graph from the same derived
    stream, so candidates in one round are compared on common random
    numbers.
    """
    k_D = check_budget('k_D', k_D)
    seeds = as_seeds(fixed_seeds).check_within(graph)
    candidates = [v for v in range(graph.n) if v not in seeds]
    if k_D > len(candidates):
        raise ParameterError(f'k_D={k_D} exceeds the {len(candidates)} nodes that are not seeds')

    blocked = []
    spreads = []
    for round_ in range(k_D):
        round_spec = spec.derive(seed=derive_seed(spec.seed, 'greedy-block', round_))
        best, best_spread = None, None
        for v in candidates:
            shrunk = block(graph, blocked + [v])
            spread = estimate_influence(sample_live_edges(shrunk, round_spec), seeds).mean
            if best_spread is None or spread < best_spread:
                best, best_spread = v, spread
        blocked.append(best)
        candidates.remove(best)
        spreads.append(best_spread)
        logger.debug('greedy blocking round %d: blocked %d, spread %.3f', round_, best, best_spread)
    return DefenseResult(
        BlockSet.of(blocked, budget=k_D),
        method='greedy-blocking',
        params={'k_D': k_D, 'seeds': seeds.sorted()},
        diagnostics={'spreads': spreads},
    )


def wdom_defense(graph, k_D, mu=None):
    k_D = check_budget('k_D', k_D)
    return DefenseResult(top_k(wdom_scores(graph, mu), k_D), method='wdom', params={'k_D': k_D})


def random_defense(graph, k_D, seed):
    k_D = check_budget('k_D', k_D)
    rng = make_rng(seed, 'random-defense')
    chosen = rng.choice(graph.n, size=min(k_D, graph.n), replace=False)
    return DefenseResult(
        BlockSet.of(chosen.tolist(), budget=k_D), method='random', params={'k_D': k_D, 'seed': seed},
    )
