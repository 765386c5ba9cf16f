import itertools

import numpy as np
import pytest

from adversary.br_milp import best_response_lp, best_response_milp
from adversary.oracles import brute_force_br
from influence_blocking.exceptions import GuardError, ParameterError
from netgraph.factories import BaGraphFactory, ErGraphFactory, WsGraphFactory
from netgraph.generators import gen_er
from netgraph.graph import Graph
from netgraph.rng import make_rng
from netgraph.sets import BlockSet
from optikit.backends import solve
from optikit.model import BINARY, CONTINUOUS

from .constraint_generation import CutPool, constraint_generation
from .def_milp import DefMilpVars, big_m, build_br_dual, build_def_milp, def_milp, pruned_milp, wdom_scores
from .edges import build_ev_milp, ev_defense
from .oracles import brute_force_defense, brute_force_ev_defense
from .results import EdgeNodePlan
from .serializers import DefenseResultSerializer


def random_digraph(n, p, seed):
    rng = make_rng(seed, 'digraph')
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Graph.from_edges(n, arcs, directed=True)


def small_graphs(count, n_max=12):
    for s in range(count):
        n = 6 + s % (n_max - 5)
        factory = (ErGraphFactory, WsGraphFactory, BaGraphFactory)[s % 3]
        graph = factory.build(n=n, seed=s)
        yield graph, 1 + s % 3, 1 + (s // 3) % 3


# Big-M and WDom

def test_big_m_is_largest_closed_neighbourhood_weight(star5, path4, arc01):
    assert big_m(star5) == 5
    assert big_m(path4, mu=[1, 2, 3, 4]) == 9
    assert big_m(arc01) == 2
    assert big_m(Graph.from_edges(2, []), mu=[0, 0]) == 1


def test_wdom_scores(star5, path4):
    assert wdom_scores(star5).tolist() == [5, 2, 2, 2, 2]
    assert wdom_scores(path4, mu=[1, 2, 3, 4]).tolist() == [3, 6, 9, 7]
    isolated = Graph.from_edges(3, [(0, 1)], weights=[1, 1, 4])
    assert wdom_scores(isolated)[2] == 4


# DEF-MILP

def test_def_milp_model_size(star5):
    model = build_def_milp(star5, 1, 1)
    assert model.count(BINARY) == 5
    assert model.count(CONTINUOUS) == 26
    assert solve(model).objective == pytest.approx(1)


def test_def_milp_examples(star5, path4):
    result = def_milp(star5, 1, 1)
    assert result.blocked.sorted() == [0]
    assert result.bound == pytest.approx(1)
    result = def_milp(path4, 1, 1)
    assert result.blocked.sorted() in ([1], [2])
    assert result.bound == pytest.approx(2)


def test_def_milp_without_defense_budget_is_the_relaxed_best_response(star5):
    assert solve(build_def_milp(star5, 0, 1)).objective == pytest.approx(best_response_lp(star5, (), 1))
    result = def_milp(star5, 0, 1)
    assert len(result.blocked) == 0
    assert result.bound == pytest.approx(5)


def test_def_milp_without_attack_budget(star5):
    assert def_milp(star5, 2, 0).bound == 0


def test_weighted_def_milp(star5):
    result = def_milp(star5, 1, 1, mu=[1, 2, 1, 1, 1])
    assert result.blocked.sorted() == [0]
    assert result.bound == pytest.approx(2)
    result = def_milp(star5, 1, 1, mu=[2, 1, 1, 1, 1])
    assert result.blocked.sorted() == [0]
    assert result.bound == pytest.approx(1)


def test_def_milp_rejects_oversized_budget(star5):
    with pytest.raises(ParameterError):
        build_def_milp(star5, 6, 1)


def test_directed_def_milp(arc01):
    result = def_milp(arc01, 1, 1)
    # either block leaves a single node to seed
    assert len(result.blocked) == 1
    assert result.bound == pytest.approx(1)
    assert def_milp(arc01, 0, 1).bound == pytest.approx(2)


@pytest.mark.parametrize('seed', range(30))
def test_br_dual_matches_relaxed_best_response(seed):
    graph = random_digraph(9, 0.25, seed) if seed % 2 else gen_er(9, 0.3, seed=seed)
    rng = make_rng(seed, 'blocks')
    x = set(rng.choice(graph.n, size=seed % 4, replace=False).tolist())
    mu = None if seed % 3 else rng.random(graph.n)
    primal = best_response_lp(graph, x, 2, mu)
    dual = solve(build_br_dual(graph, x, 2, mu)).objective
    assert abs(primal - dual) <= 1e-6 * (1 + abs(primal))


def test_linearization_is_exact_at_the_optimum():
    for graph, k_D, k_A in small_graphs(8, n_max=10):
        model = build_def_milp(graph, k_D, k_A)
        result = solve(model)
        variables = DefMilpVars.of(model, graph.n, big_m(graph))
        for i, x in variables.x.items():
            expected = (1 - result.values[x]) * result.values[variables.q[i]]
            assert result.values[variables.w[i]] == pytest.approx(expected, abs=1e-5)


def test_def_milp_bound_is_an_upper_bound():
    for graph, k_D, k_A in small_graphs(12):
        result = def_milp(graph, k_D, k_A)
        exact = brute_force_br(graph, result.blocked, k_A).value
        assert result.bound >= exact - 1e-6
        assert result.diagnostics['relaxed_best_response'] == pytest.approx(result.bound, abs=1e-5)


def test_directed_def_milp_bound_matches_relaxed_response():
    for seed in range(6):
        graph = random_digraph(8, 0.3, seed)
        result = def_milp(graph, 2, 2)
        assert result.bound == pytest.approx(best_response_lp(graph, result.blocked, 2), abs=1e-5)


# Constraint generation

def test_cg_on_star(star5):
    result = constraint_generation(star5, 1, 1, gap=0)
    assert result.blocked.sorted() == [0]
    assert result.bound == 1
    assert len(result.iterations) <= 3
    assert result.diagnostics['status'] == 'Optimal'


def test_cut_pool_rejects_repeated_cuts(star5):
    pool = CutPool(star5, 1, np.ones(5))
    assert pool.add_cut({0})
    assert not pool.add_cut([0])
    assert {0} in pool and len(pool) == 1


def test_cg_matches_brute_force_defense():
    for graph, k_D, k_A in small_graphs(20):
        oracle = brute_force_defense(graph, k_D, k_A)
        result = constraint_generation(graph, k_D, k_A, gap=0)
        assert result.bound == oracle.bound
        assert best_response_milp(graph, result.blocked, k_A).value == oracle.bound
        masters = [entry['master'] for entry in result.iterations]
        assert all(later >= earlier - 1e-6 for earlier, later in zip(masters, masters[1:]))
        assert masters[-1] <= oracle.bound + 1e-6


@pytest.mark.parametrize('gap', [1, 2, 3])
def test_cg_gap_is_certified(gap):
    for graph, k_D, k_A in small_graphs(6, n_max=10):
        oracle = brute_force_defense(graph, k_D, k_A)
        result = constraint_generation(graph, k_D, k_A, gap=gap)
        assert result.bound <= oracle.bound + gap
        assert result.diagnostics['lower_bound'] <= oracle.bound + 1e-6


def test_cg_iteration_limit_returns_best_incumbent(star5):
    result = constraint_generation(star5, 1, 1, max_iterations=1)
    assert result.diagnostics['status'] == 'LimitReached'
    assert result.diagnostics['lower_bound'] == 0
    assert result.bound == 5


def test_cg_rejects_negative_gap(star5):
    with pytest.raises(ParameterError):
        constraint_generation(star5, 1, 1, gap=-1)


def test_weighted_cg_matches_brute_force():
    for seed in range(5):
        graph = ErGraphFactory.build(n=8, p=0.3, seed=seed)
        mu = make_rng(seed, 'weights').random(graph.n)
        oracle = brute_force_defense(graph, 2, 2, mu)
        assert constraint_generation(graph, 2, 2, mu).bound == pytest.approx(oracle.bound)


# Pruned MILP

def test_pruning_with_every_candidate_matches_def_milp():
    graph = gen_er(12, 0.3, seed=5)
    assert pruned_milp(graph, 2, 2, l_d=12).bound == pytest.approx(def_milp(graph, 2, 2).bound, abs=1e-9)


def test_pruning_on_star(star5):
    result = pruned_milp(star5, 1, 1, l_d=1, order='degree')
    assert result.diagnostics['candidates'] == [0]
    assert result.blocked.sorted() == [0]
    assert pruned_milp(star5, 1, 1, l_d=1, order='wdom').blocked.sorted() == [0]


def test_pruning_validates_arguments(star5):
    with pytest.raises(ParameterError):
        pruned_milp(star5, 2, 1, l_d=1)
    with pytest.raises(ParameterError):
        pruned_milp(star5, 1, 1, l_d=2, order='closeness')


def test_pruned_candidates_only_get_block_variables(star5):
    model = build_def_milp(star5, 1, 1, candidates=[0, 1])
    assert model.count(BINARY) == 2


# Node and edge blocking

def test_ev_without_budget(star5):
    result = ev_defense(star5, 2, 1, 0, 1)
    assert len(result.blocked) == 0 and result.blocked_edges == ()
    assert result.bound == pytest.approx(best_response_lp(star5, (), 1))


def test_ev_with_unaffordable_edges_matches_def_milp(path4):
    result = ev_defense(path4, 1, 10, 2, 1)
    assert result.blocked_edges == ()
    assert result.bound == pytest.approx(def_milp(path4, 2, 1).bound)
    model = build_ev_milp(path4, 1, 10, 2, 1)
    assert not any(tag[0] in ('z', 'k', 'b') for tag in model.tags)


def test_ev_on_triangle(tri):
    result = ev_defense(tri, 2, 1, 2, 1)
    graph = result.attacked_graph(tri)
    assert brute_force_br(graph, result.blocked, 1).value == 2
    assert result.plan.cost <= 2


def test_ev_model_has_one_edge_variable_per_undirected_edge(tri, arc01):
    assert build_ev_milp(tri, 2, 1, 2, 1).count(BINARY) == 3 + 2 * 3
    assert build_ev_milp(arc01, 2, 1, 2, 1).count(BINARY) == 2 + 2


def test_ev_rejects_zero_costs(tri):
    with pytest.raises(ParameterError):
        build_ev_milp(tri, 0, 1, 2, 1)
    with pytest.raises(ParameterError):
        ev_defense(tri, 1, 0, 2, 1)


def test_ev_plans_on_tiny_graphs():
    for seed in range(10):
        graph = ErGraphFactory.build(n=5 + seed % 4, p=0.4, seed=seed)
        budget, k_A = 2 + seed % 3, 1 + seed % 2
        result = ev_defense(graph, 2, 1, budget, k_A)
        plan = result.plan
        assert plan.cost <= budget
        assert not any(u in plan.nodes or v in plan.nodes for u, v in plan.edges)
        achieved = brute_force_br(plan.apply(graph), plan.nodes, k_A).value
        oracle = brute_force_ev_defense(graph, 2, 1, budget, k_A)
        assert achieved == oracle.bound
        assert result.bound >= achieved - 1e-6


def test_ev_oracle_on_triangle(tri):
    oracle = brute_force_ev_defense(tri, 2, 1, 2, 1)
    assert oracle.bound == 2


def test_edge_node_plan_validation(tri):
    with pytest.raises(ParameterError):
        EdgeNodePlan(BlockSet.of({0}), ((0, 1),), 1, 1, 5)
    with pytest.raises(ParameterError):
        EdgeNodePlan(BlockSet.of(()), ((0, 1), (1, 2)), 1, 1, 1)


# Brute-force defense

def test_brute_force_defense_examples(star5, k4, path4):
    result = brute_force_defense(star5, 1, 1)
    assert result.blocked.sorted() == [0] and result.bound == 1
    assert brute_force_defense(k4, 1, 1).bound == 3
    assert brute_force_defense(path4, 2, 1).bound == 1


def test_exact_defense_value_is_monotone_in_budget():
    for graph, _, k_A in small_graphs(5, n_max=9):
        values = [brute_force_defense(graph, k_D, k_A).bound for k_D in range(4)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_brute_force_defense_guard():
    with pytest.raises(GuardError):
        brute_force_defense(gen_er(30, 0.1, seed=0), 3, 3, limit=10 ** 4)


def test_brute_force_equivalence_with_exhaustive_minimax(path4):
    exhaustive = min(
        brute_force_br(path4, set(x), 1).value
        for size in range(3)
        for x in itertools.combinations(range(4), size)
    )
    assert brute_force_defense(path4, 2, 1).bound == exhaustive


# Serialization

def test_defense_result_document(star5, tri):
    document = DefenseResultSerializer(constraint_generation(star5, 1, 1)).data
    assert document['blocked_nodes'] == [0]
    assert document['blocked_edges'] == []
    assert document['method'] == 'cg'
    assert document['iterations'][0]['master'] == 0
    ev = DefenseResultSerializer(brute_force_ev_defense(tri, 2, 1, 2, 1)).data
    assert all(len(edge) == 2 for edge in ev['blocked_edges'])
