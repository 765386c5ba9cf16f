"""Name-based dispatch of every defense and attack the commands can run.

Randomized strategies draw from streams derived from the ``seed`` they are
handed, so a cell's outcome depends only on ``(seed, inputs)``.
"""
import logging
from dataclasses import dataclass

from adversary.br_milp import best_response_milp
from adversary.greedy import celf_im, greedy_kmaxvd
from adversary.objective import check_budget, node_weights
from adversary.oracles import brute_force_br
from baselines.defenses import (
    centrality_defense,
    greedy_blocking_defense,
    im_defense,
    random_defense,
    wdom_defense,
)
from blockade.constraint_generation import constraint_generation
from blockade.def_milp import def_milp, pruned_milp
from blockade.edges import ev_defense
from blockade.oracles import brute_force_defense
from blockade.results import DefenseResult
from diffusion.live_edge import estimate_influence, sample_live_edges
from diffusion.specs import DiffusionSpec
from influence_blocking.conf import app_setting
from influence_blocking.exceptions import ParameterError
from netgraph.domination import block
from netgraph.rng import derive_seed
from netgraph.sets import BlockSet, as_block, as_seeds

logger = logging.getLogger(__name__)


def _samples(graph, diffusion, replicas, seed, purpose):
    spec = diffusion.derive(replicas=replicas, seed=derive_seed(seed, purpose))
    return sample_live_edges(graph, spec)


def _none(graph, k_D, k_A, mu, seed, diffusion, options):
    return DefenseResult(BlockSet.of((), budget=k_D), method='none', params={'k_D': k_D})


def _def_milp(graph, k_D, k_A, mu, seed, diffusion, options):
    return def_milp(graph, k_D, k_A, mu)


def _pruned_milp(graph, k_D, k_A, mu, seed, diffusion, options):
    return pruned_milp(graph, k_D, k_A, mu, l_d=options.get('l_d'), order=options.get('order', 'degree'))


def _cg(graph, k_D, k_A, mu, seed, diffusion, options):
    return constraint_generation(
        graph, k_D, k_A, mu,
        gap=options.get('gap', 0.0),
        max_iterations=options.get('max_iterations'),
        time_limit=options.get('time_limit'),
    )


def _ev_milp(graph, k_D, k_A, mu, seed, diffusion, options):
    try:
        c_n, c_e, budget = options['c_n'], options['c_e'], options['budget']
    except KeyError as missing:
        raise ParameterError(f'ev-milp needs c_n, c_e and budget; {missing} is missing') from None
    return ev_defense(graph, c_n, c_e, budget, k_A, mu)


def _brute_force(graph, k_D, k_A, mu, seed, diffusion, options):
    return brute_force_defense(graph, k_D, k_A, mu)


def _centrality(kind):
    def defend(graph, k_D, k_A, mu, seed, diffusion, options):
        return centrality_defense(graph, k_D, kind)
    return defend


def _influence(graph, k_D, k_A, mu, seed, diffusion, options):
    samples = _samples(graph, diffusion, app_setting('INFLUENCE_CENTRALITY_REPLICAS'), seed, 'influence')
    return centrality_defense(graph, k_D, 'influence', samples)


def _im(graph, k_D, k_A, mu, seed, diffusion, options):
    samples = _samples(graph, diffusion, app_setting('GREEDY_REPLICAS'), seed, 'im-defense')
    return im_defense(graph, k_D, samples)


def _greedy_blocking(graph, k_D, k_A, mu, seed, diffusion, options):
    samples = _samples(graph, diffusion, app_setting('GREEDY_REPLICAS'), seed, 'im-defense')
    fixed = celf_im(samples, (), k_A, graph=graph).seeds
    spec = diffusion.derive(
        replicas=app_setting('INFLUENCE_CENTRALITY_REPLICAS'), seed=derive_seed(seed, 'greedy-blocking'),
    )
    return greedy_blocking_defense(graph, k_D, fixed, spec)


def _wdom(graph, k_D, k_A, mu, seed, diffusion, options):
    return wdom_defense(graph, k_D, mu)


def _random(graph, k_D, k_A, mu, seed, diffusion, options):
    return random_defense(graph, k_D, seed)


DEFENSES = {
    'none': _none,
    'def-milp': _def_milp,
    'pruned-milp': _pruned_milp,
    'cg': _cg,
    'ev-milp': _ev_milp,
    'brute-force': _brute_force,
    'degree': _centrality('degree'),
    'betweenness': _centrality('betweenness'),
    'pagerank': _centrality('pagerank'),
    'influence': _influence,
    'im': _im,
    'greedy-blocking': _greedy_blocking,
    'wdom': _wdom,
    'random': _random,
}


def run_defense(name, graph, k_D, k_A, mu=None, seed=0, diffusion=None, **options):
    try:
        defend = DEFENSES[name]
    except KeyError:
        raise ParameterError(f'unknown defense {name!r}; expected one of {sorted(DEFENSES)}') from None
    k_D = check_budget('k_D', k_D)
    k_A = check_budget('k_A', k_A)
    if k_D > graph.n:
        raise ParameterError(f'k_D={k_D} exceeds the {graph.n} nodes of the graph')
    diffusion = diffusion or DiffusionSpec(seed=seed)
    return defend(graph, k_D, k_A, mu, seed, diffusion, options)


@dataclass(frozen=True)
class AttackReport:
    """An attack's seeds together with the utility they earn and its standard error."""

    outcome: object
    utility: float
    stderr: float = 0.0
    replicas: int = 0


ATTACKS = ('kmaxvd', 'greedy-kmaxvd', 'brute-force', 'im-ic', 'im-lt', 'wim')


def run_attack(name, graph, blocked, k_A, mu=None, seed=0, diffusion=None, greedy_replicas=None,
               eval_replicas=None):
    """Attack ``block(graph, blocked)`` and measure the attacker's utility.

    Domination attacks report their exact objective.  Influence attacks
    pick seeds by CELF on one sample set and are scored on a fresh one, so
    the reported spread is not biased by the selection.
    """
    blocked = as_block(blocked).check_within(graph)
    k_A = check_budget('k_A', k_A)
    if name == 'kmaxvd':
        outcome = best_response_milp(graph, blocked, k_A, mu)
        return AttackReport(outcome, outcome.value)
    if name == 'greedy-kmaxvd':
        outcome = greedy_kmaxvd(graph, blocked, k_A, mu)
        return AttackReport(outcome, outcome.value)
    if name == 'brute-force':
        outcome = brute_force_br(graph, blocked, k_A, mu)
        return AttackReport(outcome, outcome.value)
    if name not in ATTACKS:
        raise ParameterError(f'unknown attack {name!r}; expected one of {ATTACKS}')

    diffusion = diffusion or DiffusionSpec(seed=seed)
    if name == 'im-lt':
        diffusion = diffusion.derive(model='lt')
    weights = node_weights(graph, mu) if name == 'wim' else None
    greedy_replicas = app_setting('GREEDY_REPLICAS') if greedy_replicas is None else greedy_replicas
    eval_replicas = app_setting('EVAL_REPLICAS') if eval_replicas is None else eval_replicas

    shrunk = block(graph, blocked)
    selection = _samples(shrunk, diffusion, greedy_replicas, seed, 'attack-greedy')
    outcome = celf_im(selection, blocked, k_A, weights, graph=graph)
    estimate = evaluate_seeds(shrunk, outcome.seeds, diffusion.derive(
        replicas=eval_replicas, seed=derive_seed(seed, 'attack-eval'),
    ), weights)
    logger.debug('%s attack picked %s, spread %.3f +- %.3f', name, outcome.seeds.sorted(), estimate.mean,
                 estimate.stderr)
    return AttackReport(outcome, estimate.mean, estimate.stderr, estimate.replicas)


def evaluate_seeds(shrunk, seeds, spec, weights=None):
    return estimate_influence(sample_live_edges(shrunk, spec), seeds, weights)


def evaluate_pair(graph, blocked, seeds, spec, mu=None):
    """Spread of ``seeds`` on ``graph`` with ``blocked`` removed, over ``spec.replicas`` samples."""
    blocked = as_block(blocked).check_within(graph)
    seeds = as_seeds(seeds).check_within(graph).check_disjoint(blocked)
    weights = None if mu is None else node_weights(graph, mu)
    return evaluate_seeds(block(graph, blocked), seeds, spec, weights)
