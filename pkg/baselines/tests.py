import pytest

from adversary.greedy import celf_im
from diffusion.live_edge import sample_live_edges
from diffusion.specs import DiffusionSpec
from influence_blocking.exceptions import ParameterError, UsageError
from netgraph.factories import ErGraphFactory
from netgraph.generators import gen_er
from netgraph.graph import Graph

from .defenses import (
    centrality_defense,
    greedy_blocking_defense,
    im_defense,
    random_defense,
    top_k,
    wdom_defense,
)


def uic(p, replicas=5, seed=0):
    return DiffusionSpec(model='uic', p=p, replicas=replicas, seed=seed)


def test_top_k_breaks_ties_by_index():
    assert top_k([1, 3, 3, 0], 2).sorted() == [1, 2]
    assert top_k([1, 3, 3, 0], 2, candidates=[0, 2, 3]).sorted() == [0, 2]


def test_degree_defense(star5):
    assert centrality_defense(star5, 1, 'degree').blocked.sorted() == [0]


def test_degree_defense_takes_the_top_degrees():
    graph = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 5)])
    # degrees 4, 3, 3, 2, 1, 1
    assert centrality_defense(graph, 2, 'degree').blocked.sorted() == [0, 1]


def test_pagerank_defense_on_cycle(c4):
    assert centrality_defense(c4, 2, 'pagerank').blocked.sorted() == [0, 1]


def test_betweenness_defense(path4):
    assert centrality_defense(path4, 2, 'betweenness').blocked.sorted() == [1, 2]


def test_influence_defense(star5):
    samples = sample_live_edges(star5, uic(1.0))
    assert centrality_defense(star5, 1, 'influence', samples).blocked.sorted() == [0]


def test_influence_defense_needs_samples(star5):
    with pytest.raises(UsageError):
        centrality_defense(star5, 1, 'influence')


def test_unknown_centrality(star5):
    with pytest.raises(ParameterError):
        centrality_defense(star5, 1, 'closeness')


def test_im_defense(star5, path4):
    assert im_defense(star5, 1, sample_live_edges(star5, uic(1.0))).blocked.sorted() == [0]
    assert im_defense(path4, 2, sample_live_edges(path4, uic(0.0))).blocked.sorted() == [0, 1]


def test_im_defense_uses_the_attackers_greedy():
    graph = gen_er(30, 0.1, seed=42)
    samples = sample_live_edges(graph, uic(0.1, replicas=100, seed=42))
    expected = celf_im(samples, (), 3).seeds.sorted()
    assert im_defense(graph, 3, samples).blocked.sorted() == expected


def test_im_defense_rejects_foreign_samples(star5, path4):
    with pytest.raises(UsageError):
        im_defense(star5, 1, sample_live_edges(path4, uic(1.0)))


def test_greedy_blocking_examples(star5, path4):
    assert greedy_blocking_defense(star5, 1, {0}, uic(1.0)).blocked.sorted() == [1]
    assert greedy_blocking_defense(path4, 1, {0}, uic(1.0)).blocked.sorted() == [1]
    assert greedy_blocking_defense(path4, 2, {0}, uic(0.0)).blocked.sorted() == [1, 2]


def test_greedy_blocking_never_blocks_seeds():
    graph = ErGraphFactory.build(n=12, p=0.3, seed=3)
    result = greedy_blocking_defense(graph, 4, {0, 5}, uic(0.3, replicas=20))
    assert len(result.blocked) == 4
    assert not {0, 5} & result.blocked.nodes
    spreads = result.diagnostics['spreads']
    assert len(spreads) == 4


def test_greedy_blocking_budget(path4):
    with pytest.raises(ParameterError):
        greedy_blocking_defense(path4, 4, {0}, uic(1.0))


def test_wdom_defense(star5):
    assert wdom_defense(star5, 1).blocked.sorted() == [0]
    assert wdom_defense(star5, 1, mu=[0, 5, 0, 0, 0]).blocked.sorted() == [0]


def test_random_defense(star5):
    assert random_defense(star5, 5, seed=1).blocked.sorted() == [0, 1, 2, 3, 4]
    assert random_defense(star5, 9, seed=1).blocked.sorted() == [0, 1, 2, 3, 4]
    assert random_defense(star5, 2, seed=9).blocked == random_defense(star5, 2, seed=9).blocked
    assert len(random_defense(star5, 2, seed=9).blocked) == 2


@pytest.mark.parametrize('k_D', [0, 1, 3])
def test_every_baseline_blocks_k_D_nodes(k_D):
    graph = gen_er(10, 0.3, seed=1)
    samples = sample_live_edges(graph, uic(0.2, replicas=10))
    results = [
        centrality_defense(graph, k_D, 'degree'),
        centrality_defense(graph, k_D, 'betweenness'),
        centrality_defense(graph, k_D, 'pagerank'),
        centrality_defense(graph, k_D, 'influence', samples),
        im_defense(graph, k_D, samples),
        greedy_blocking_defense(graph, k_D, {0}, uic(0.2, replicas=10)),
        wdom_defense(graph, k_D),
        random_defense(graph, k_D, seed=4),
    ]
    assert [len(result.blocked) for result in results] == [k_D] * len(results)
