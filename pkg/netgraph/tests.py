import io
import itertools

import networkx as nx
import numpy as np
import pytest

from influence_blocking.exceptions import GraphParseError, ParameterError

from .centrality import centrality, rank_nodes
from .domination import block, dominated_set, dominators
from .factories import BaGraphFactory, ErGraphFactory, WsGraphFactory
from .generators import forest_fire_sample, gen_ba, gen_er, gen_ws
from .graph import Graph
from .loaders import load_dataset, load_edge_list, write_edge_list
from .rng import derive_seed
from .serializers import graph_from_document, graph_to_document
from .sets import BlockSet, SeedSet


def _symmetric(graph):
    return all(u in graph.out_adj[v] for u in range(graph.n) for v in graph.out_adj[u])


# Graph

def test_from_edges_rejects_self_loops_and_parallel_edges():
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 3)])
    # opposite arcs are distinct in a directed graph
    assert Graph.from_edges(2, [(0, 1), (1, 0)], directed=True).m == 2


def test_weights_must_be_finite_and_nonnegative():
    with pytest.raises(ParameterError):
        Graph.from_edges(2, [(0, 1)], weights=[1.0, -1.0])
    with pytest.raises(ParameterError):
        Graph.from_edges(2, [(0, 1)], weights=[1.0, np.inf])


def test_remove_edges_accepts_either_orientation(tri):
    pruned = tri.remove_edges([(1, 0)])
    assert pruned.m == 2
    assert 1 not in pruned.out_adj[0]
    with pytest.raises(ParameterError):
        pruned.remove_edges([(0, 1)])


def test_json_document_round_trip(path4):
    weighted = path4.with_weights([1, 2, 3, 4])
    document = graph_to_document(weighted)
    assert document['edges'] == [[0, 1], [1, 2], [2, 3]]
    assert graph_from_document(document) == weighted


def test_invalid_json_document_is_a_parameter_error():
    with pytest.raises(ParameterError):
        graph_from_document({'labels': ['a', 'b'], 'edges': [[0, 5]]})


# Generators

def test_er_extremes():
    assert gen_er(5, 0, seed=1).m == 0
    assert gen_er(5, 1, seed=1).m == 10


def test_er_edge_count_is_binomial():
    graph = gen_er(64, 0.1, seed=7)
    pairs = 64 * 63 // 2
    mean, sigma = pairs * 0.1, np.sqrt(pairs * 0.1 * 0.9)
    assert abs(graph.m - mean) <= 4 * sigma


@pytest.mark.parametrize('n, p', [(0, 0.5), (5, -0.1), (5, 1.5)])
def test_er_rejects_bad_parameters(n, p):
    with pytest.raises(ParameterError):
        gen_er(n, p)


def test_ws_without_rewiring_is_a_ring_lattice():
    graph = gen_ws(8, 2, 0, seed=0)
    assert graph.m == 16
    assert set(graph.out_degrees()) == {4}
    assert graph.out_adj[0] == (1, 2, 6, 7)


def test_ws_full_rewiring_preserves_edge_count():
    graph = gen_ws(8, 2, 1, seed=5)
    assert graph.m == 16
    assert _symmetric(graph)


def test_ws_sixty_four_node_suite():
    graph = gen_ws(64, 5, 0.15, seed=3)
    assert graph.m == 320
    assert nx.is_connected(graph.to_networkx())


def test_ws_rejects_k_at_least_n():
    with pytest.raises(ParameterError):
        gen_ws(5, 5, 0.1)


def test_ba_edge_counts():
    assert gen_ba(4, 3, seed=0).m == 6
    graph = gen_ba(64, 3, seed=11)
    assert graph.m == 3 + 3 * (64 - 3)
    assert graph.out_degrees().max() >= 9


def test_ba_rejects_m_at_least_n():
    with pytest.raises(ParameterError):
        gen_ba(3, 3)


@pytest.mark.parametrize('factory', [ErGraphFactory, WsGraphFactory, BaGraphFactory])
def test_generators_are_deterministic_and_symmetric(factory):
    first = factory.build(n=12, seed=4)
    second = factory.build(n=12, seed=4)
    assert first == second
    assert first.digest == second.digest
    assert _symmetric(first)


def test_seed_derivation_separates_streams():
    assert derive_seed(1, 'er') != derive_seed(1, 'ws')
    assert derive_seed(1, 'replica', 0) != derive_seed(1, 'replica', 1)
    assert derive_seed(1, 'replica', 0) == derive_seed(1, 'replica', 0)


# Forest Fire

def test_forest_fire_full_burn_keeps_every_node():
    graph = gen_er(30, 0.1, seed=2)
    sample = forest_fire_sample(graph, 30, seed=1)
    assert sample == graph


def test_forest_fire_single_node():
    sample = forest_fire_sample(gen_er(30, 0.2, seed=2), 1, seed=3)
    assert sample.n == 1 and sample.m == 0


def test_forest_fire_sample_preserves_labels():
    graph = gen_er(200, 0.05, seed=9)
    sample = forest_fire_sample(graph, 50, seed=9)
    assert sample.n == 50
    assert set(sample.labels) <= set(graph.labels)
    assert sample.origin == tuple(range(50))
    assert forest_fire_sample(graph, 50, seed=9) == sample


def test_forest_fire_rejects_empty_target():
    with pytest.raises(ParameterError):
        forest_fire_sample(gen_er(10, 0.2), 0)


# Loader

def test_load_path():
    graph, report = load_edge_list(io.StringIO('0 1\n1 2'))
    assert (graph.n, graph.m) == (3, 2)
    assert report.dropped_duplicates == 0


def test_load_drops_duplicates_and_self_loops():
    graph, report = load_edge_list(io.StringIO('# header\na b\nb a\nc c  # loop\n'))
    assert graph.m == 1
    assert graph.labels == ('a', 'b', 'c')
    assert report.dropped_duplicates == 1
    assert report.dropped_self_loops == 1


def test_load_reports_line_number():
    with pytest.raises(GraphParseError) as excinfo:
        load_edge_list(io.StringIO('0 1\n\n7\n'))
    assert excinfo.value.line_number == 3


def test_load_weight_table_and_write_back():
    graph, _ = load_edge_list(io.StringIO('x y\ny z\n'), weights={'y': 2.5})
    assert graph.weights.tolist() == [1.0, 2.5, 1.0]
    buffer = io.StringIO()
    write_edge_list(graph, buffer)
    reloaded, _ = load_edge_list(io.StringIO(buffer.getvalue()))
    assert reloaded.edges() == graph.edges()


def test_directed_load_keeps_opposite_arcs():
    graph, report = load_edge_list(io.StringIO('a b\nb a\n'), directed=True)
    assert graph.m == 2 and report.dropped_duplicates == 0


def test_load_dataset_checks_the_manifest(tmp_path):
    with pytest.raises(ParameterError):
        load_dataset('karate')
    path = tmp_path / 'hamster.txt'
    path.write_text('1 2\n2 3\n')
    with pytest.raises(ParameterError, match='expected n=1858'):
        load_dataset('hamsterster', path)


# Blocking and domination

def test_block_star_center(star5):
    blocked = block(star5, BlockSet.of({0}))
    assert blocked.n == 4 and blocked.m == 0
    assert blocked.origin == (1, 2, 3, 4)


def test_block_nothing_is_identity(star5):
    assert block(star5, BlockSet.of()) == star5


def test_block_path_interior(path4):
    blocked = block(path4, {1})
    components = [sorted(blocked.origin[i] for i in c) for c in nx.connected_components(blocked.to_networkx())]
    assert sorted(components) == [[0], [2, 3]]


def test_block_rejects_out_of_range(path4):
    with pytest.raises(ParameterError):
        block(path4, {9})


def test_block_composes():
    graph = gen_er(12, 0.3, seed=6)
    once = block(graph, {1, 4, 7})
    first = block(graph, {1})
    twice = block(first, {first.local_index[4], first.local_index[7]})
    assert once.origin == twice.origin
    assert once.edges() == twice.edges()


def test_dominators(star5, arc01):
    assert dominators(star5, 0) == {0, 1, 2, 3, 4}
    assert dominators(star5, 1) == {0, 1}
    assert dominators(arc01, 1) == {0, 1}
    assert dominators(arc01, 0) == {0}


def test_dominated_set(star5, path4):
    assert dominated_set(star5, {0}) == set(range(5))
    assert dominated_set(star5, set()) == set()
    assert dominated_set(path4, {1, 3}) == {0, 1, 2, 3}


@pytest.mark.parametrize('directed', [False, True])
def test_domination_duality(directed):
    graph = gen_er(9, 0.3, seed=13)
    if directed:
        graph = Graph.from_edges(graph.n, graph.edges(), directed=True)
    for i, j in itertools.product(range(graph.n), repeat=2):
        assert (i in dominated_set(graph, {j})) == (j in dominators(graph, i))


def test_domination_is_monotone_and_submodular():
    for graph in ErGraphFactory.build_batch(3, n=6, p=0.35):
        subsets = [frozenset(c) for r in range(graph.n + 1) for c in itertools.combinations(range(graph.n), r)]
        for small in subsets:
            for large in subsets:
                if not small <= large:
                    continue
                assert dominated_set(graph, small) <= dominated_set(graph, large)
                for v in range(graph.n):
                    gain_small = len(dominated_set(graph, small | {v})) - len(dominated_set(graph, small))
                    gain_large = len(dominated_set(graph, large | {v})) - len(dominated_set(graph, large))
                    assert gain_small >= gain_large


def test_node_sets_enforce_budgets():
    with pytest.raises(ParameterError):
        BlockSet(frozenset({0, 1}), 1)
    assert SeedSet.of({3, 1}, budget=2).sorted() == [1, 3]


# Centrality

def test_degree_centrality(star5):
    assert centrality(star5, 'degree').tolist() == [4, 1, 1, 1, 1]


def test_betweenness_centrality(star5):
    assert centrality(star5, 'betweenness').tolist() == pytest.approx([6, 0, 0, 0, 0])


def test_pagerank_uniform_on_cycle(c4):
    scores = centrality(c4, 'pagerank')
    assert scores == pytest.approx([0.25] * 4)
    assert rank_nodes(scores)[:2] == [0, 1]


def test_pagerank_sums_to_one_with_dangling_nodes():
    graph = Graph.from_edges(4, [(0, 1), (1, 2), (3, 0)], directed=True)
    scores = centrality(graph, 'pagerank')
    assert scores.sum() == pytest.approx(1.0)
    assert scores[0] > scores[3]


def test_centrality_rejects_empty_graph_and_unknown_kind(star5):
    with pytest.raises(ParameterError):
        centrality(Graph.from_edges(0, []), 'degree')
    with pytest.raises(ParameterError):
        centrality(star5, 'closeness')
