import itertools
import math

import numpy as np
import pytest

from diffusion.live_edge import sample_live_edges
from diffusion.specs import DiffusionSpec
from influence_blocking.exceptions import GuardError, ParameterError, UsageError
from netgraph.domination import block
from netgraph.factories import BaGraphFactory, ErGraphFactory, WsGraphFactory
from netgraph.generators import gen_er
from netgraph.rng import make_rng
from optikit.branch_and_bound import solve_milp
from optikit.model import BINARY, CONTINUOUS

from .br_milp import BrMilpVars, best_response_lp, best_response_milp, build_br_milp
from .greedy import celf_im, greedy_kmaxvd, naive_greedy_im
from .objective import eval_F
from .oracles import brute_force_br
from .serializers import AttackOutcomeSerializer


def oracle_instances(count=50):
    """Mixed ER/WS/BA graphs with n <= 15, k_A <= 3, unit or U[0,1] weights."""
    for s in range(count):
        n = 8 + s % 8
        if s % 3 == 0:
            graph = ErGraphFactory.build(n=n, p=0.25, seed=s)
        elif s % 3 == 1:
            graph = WsGraphFactory.build(n=n, k=2, beta=0.2, seed=s)
        else:
            graph = BaGraphFactory.build(n=n, m=2, seed=s)
        mu = None if s % 2 == 0 else make_rng(s, 'weights').random(n)
        yield graph, 1 + s % 3, mu


# eval_F

def test_eval_f_examples(star5):
    assert eval_F(star5, (), {0}) == 5
    assert eval_F(star5, {0}, {1}) == 1
    assert eval_F(star5, (), {0}, mu=[2, 1, 1, 1, 1]) == 6


def test_eval_f_rejects_blocked_seeds(star5):
    with pytest.raises(UsageError):
        eval_F(star5, {0}, {0, 1})


def test_eval_f_follows_arc_direction(arc01):
    assert eval_F(arc01, (), {0}) == 2
    assert eval_F(arc01, (), {1}) == 1


def test_eval_f_monotonicity():
    graph = gen_er(8, 0.3, seed=3)
    nodes = range(graph.n)
    for y in itertools.combinations(nodes, 2):
        for extra in nodes:
            if extra not in y:
                assert eval_F(graph, (), set(y) | {extra}) >= eval_F(graph, (), y)
        free = [v for v in nodes if v not in y]
        for blocked in free:
            assert eval_F(graph, {blocked}, y) <= eval_F(graph, (), y)


def test_weights_are_validated(star5):
    with pytest.raises(ParameterError):
        eval_F(star5, (), {0}, mu=[1, 1])
    with pytest.raises(ParameterError):
        eval_F(star5, (), {0}, mu=[1, -1, 1, 1, 1])


# BR-MILP

def test_br_milp_construction_counts(star5):
    model = build_br_milp(star5, (), 1)
    assert model.count(BINARY) == 5
    assert model.count(CONTINUOUS) == 5
    assert model.num_constraints == 11
    variables = BrMilpVars.of(model, 5)
    assert all(model.objective[t] == 1.0 for t in variables.t)


def test_br_milp_with_every_node_blocked(star5):
    model = build_br_milp(star5, set(range(5)), 2)
    assert model.objective == {}
    assert best_response_milp(star5, set(range(5)), 2).value == 0


def test_br_milp_on_path(path4):
    result = solve_milp(build_br_milp(path4, (), 1))
    assert result.objective == pytest.approx(3)
    outcome = best_response_milp(path4, (), 1)
    assert outcome.value == 3
    assert outcome.seeds.sorted() in ([1], [2])


def test_best_response_examples(star5, path4):
    assert best_response_milp(star5, {0}, 2).value == 2
    outcome = best_response_milp(path4, (), 2)
    assert outcome.value == 4
    assert len(outcome.seeds) == 2
    assert outcome.diagnostics['status'] == 'Optimal'


def test_best_response_with_zero_budget(star5):
    outcome = best_response_milp(star5, (), 0)
    assert outcome.value == 0 and len(outcome.seeds) == 0
    assert best_response_lp(star5, (), 0) == 0


def test_best_response_lp_on_star(star5):
    assert best_response_lp(star5, (), 1) == pytest.approx(5.0)


def test_negative_budget_is_rejected(star5):
    with pytest.raises(ParameterError):
        build_br_milp(star5, (), -1)


def test_directed_best_response(arc01):
    outcome = best_response_milp(arc01, (), 1)
    assert outcome.seeds.sorted() == [0]
    assert outcome.value == 2


# Greedy

def test_greedy_examples(star5, path4):
    outcome = greedy_kmaxvd(star5, (), 1)
    assert outcome.seeds.sorted() == [0]
    assert outcome.value == 5
    assert greedy_kmaxvd(path4, (), 2).value == 4


def test_greedy_never_seeds_blocked_nodes(star5):
    outcome = greedy_kmaxvd(star5, {0}, 3)
    assert outcome.seeds.sorted() == [1, 2, 3]
    assert outcome.value == 3


# Brute force

def test_brute_force_examples(star5, c4):
    outcome = brute_force_br(star5, (), 1)
    assert outcome.seeds.sorted() == [0]
    assert outcome.value == 5
    assert brute_force_br(c4, (), 1).value == 3
    # a single centre already dominates everything; the smaller set wins the tie
    assert brute_force_br(star5, (), 2).seeds.sorted() == [0]


def test_brute_force_guard():
    with pytest.raises(GuardError):
        brute_force_br(gen_er(40, 0.1, seed=1), (), 5, limit=1000)


def test_oracle_equivalence_and_sandwich():
    ratio = 1 - 1 / math.e
    for graph, k_A, mu in oracle_instances():
        exact = brute_force_br(graph, (), k_A, mu).value
        milp = best_response_milp(graph, (), k_A, mu).value
        lp = best_response_lp(graph, (), k_A, mu)
        greedy = greedy_kmaxvd(graph, (), k_A, mu).value
        assert milp == pytest.approx(exact, abs=1e-9)
        assert lp >= milp - 1e-6
        assert milp >= greedy - 1e-9
        assert greedy >= ratio * milp - 1e-9


def test_unit_weight_optimum_is_integral():
    for graph, k_A, mu in oracle_instances(12):
        if mu is None:
            result = solve_milp(build_br_milp(graph, {0}, k_A))
            assert result.objective == pytest.approx(round(result.objective), abs=1e-6)


def test_blocked_best_response_matches_brute_force():
    for seed in range(10):
        graph = ErGraphFactory.build(n=10, p=0.3, seed=seed)
        x = {seed % 10, (3 * seed + 1) % 10}
        assert best_response_milp(graph, x, 2).value == brute_force_br(graph, x, 2).value


# CELF

def test_celf_without_spread_picks_lowest_indices():
    graph = gen_er(12, 0.3, seed=2)
    samples = sample_live_edges(graph, DiffusionSpec('uic', p=0.0, replicas=20))
    outcome = celf_im(samples, (), 3)
    assert outcome.seeds.sorted() == [0, 1, 2]
    assert outcome.value == 3


def test_celf_full_spread_on_connected_graph(path4):
    samples = sample_live_edges(path4, DiffusionSpec('uic', p=1.0, replicas=5))
    assert celf_im(samples, (), 1).value == 4
    remaining = block(path4, {3})
    samples = sample_live_edges(remaining, DiffusionSpec('uic', p=1.0, replicas=5))
    outcome = celf_im(samples, {3}, 2)
    assert outcome.value == 3
    assert 3 not in outcome.seeds


def test_celf_rejects_samples_that_contain_blocked_nodes(star5):
    samples = sample_live_edges(star5, DiffusionSpec('uic', p=0.5, replicas=5))
    with pytest.raises(UsageError):
        celf_im(samples, {0}, 1)


def test_greedy_im_checks_samples_against_the_blocked_graph(path4, star5):
    remaining = block(path4, {3})
    samples = sample_live_edges(remaining, DiffusionSpec('uic', p=1.0, replicas=5))
    assert celf_im(samples, {3}, 2, graph=path4).value == 3
    with pytest.raises(UsageError):
        celf_im(samples, {3}, 2, graph=star5)
    with pytest.raises(UsageError):
        naive_greedy_im(samples, {0}, 2, graph=path4)
    assert samples.provenance == (samples.spec, remaining.digest)


def test_celf_matches_naive_greedy():
    graph = gen_er(30, 0.1, seed=42)
    samples = sample_live_edges(graph, DiffusionSpec('uic', p=0.1, replicas=500))
    lazy, naive = celf_im(samples, (), 3), naive_greedy_im(samples, (), 3)
    assert lazy.seeds == naive.seeds
    assert lazy.value == naive.value
    assert lazy.diagnostics['evaluations'] <= naive.diagnostics['evaluations']


@pytest.mark.parametrize('seed', range(10))
def test_celf_fidelity_on_sampled_instances(seed):
    graph = ErGraphFactory.build(n=20, p=0.15, seed=seed)
    x = {seed}
    model = ('uic', 'wic', 'lt')[seed % 3]
    samples = sample_live_edges(block(graph, x), DiffusionSpec(model, p=0.2, replicas=60, seed=seed))
    mu = np.ones(graph.n) if seed % 2 else make_rng(seed, 'weights').random(graph.n)
    assert celf_im(samples, x, 4, mu).seeds == naive_greedy_im(samples, x, 4, mu).seeds


# Serialization

def test_attack_outcome_document(star5):
    document = AttackOutcomeSerializer(best_response_milp(star5, {0}, 2)).data
    assert document['value'] == 2
    assert document['method'] == 'br-milp'
    assert len(document['seeds']) == 2
