import itertools

import numpy as np
import pytest

from influence_blocking.exceptions import ParameterError, UsageError
from netgraph.domination import block
from netgraph.generators import gen_er
from netgraph.rng import make_rng

from .live_edge import LiveEdgeSample, estimate_influence, replica_values, sample_live_edges, spread_on_sample
from .simulate import simulate_ic, simulate_lt, spec_probability, uniform_probability
from .specs import DiffusionSpec


def test_spec_validation():
    with pytest.raises(ParameterError):
        DiffusionSpec(model='sir')
    with pytest.raises(ParameterError):
        DiffusionSpec(p=1.5)
    with pytest.raises(ParameterError):
        DiffusionSpec(replicas=0)


def test_uic_extremes(path4):
    full = sample_live_edges(path4, DiffusionSpec('uic', p=1.0, replicas=5))
    empty = sample_live_edges(path4, DiffusionSpec('uic', p=0.0, replicas=5))
    arcs = sorted(zip(*(a.tolist() for a in path4.arcs)))
    assert all(sorted(sample.arcs()) == arcs for sample in full)
    assert all(sample.size == 0 for sample in empty)


def test_lt_keeps_one_in_arc_uniformly(path4):
    samples = sample_live_edges(path4, DiffusionSpec('lt', replicas=10000, seed=4))
    from_left = 0
    for sample in samples:
        arcs = sample.arcs()
        incoming = [(u, v) for u, v in arcs if v == 1]
        assert len(incoming) == 1
        assert all(sum(1 for _, v in arcs if v == node) <= 1 for node in range(4))
        from_left += incoming[0] == (0, 1)
    assert abs(from_left / 10000 - 0.5) <= 3 * np.sqrt(0.25 / 10000)


def test_samples_are_deterministic():
    graph = gen_er(20, 0.2, seed=1)
    spec = DiffusionSpec('wic', replicas=20, seed=8)
    first, second = sample_live_edges(graph, spec), sample_live_edges(graph, spec)
    for a, b in zip(first, second):
        assert np.array_equal(a.indptr, b.indptr)
        assert np.array_equal(a.indices, b.indices)


def test_sampled_arcs_exist_in_graph():
    graph = gen_er(15, 0.3, seed=2)
    for model in ('uic', 'wic', 'lt'):
        for sample in sample_live_edges(graph, DiffusionSpec(model, p=0.5, replicas=10)):
            assert all(v in graph.out_adj[u] for u, v in sample.arcs())


def test_spread_on_sample(path4):
    full = sample_live_edges(path4, DiffusionSpec('uic', p=1.0, replicas=1)).samples[0]
    empty = sample_live_edges(path4, DiffusionSpec('uic', p=0.0, replicas=1)).samples[0]
    assert spread_on_sample(full, {0}) == {0, 1, 2, 3}
    assert spread_on_sample(empty, {0, 2}) == {0, 2}


def test_spread_on_single_arc_sample():
    sample = LiveEdgeSample(indptr=np.array([0, 1, 1, 1, 1]), indices=np.array([1]))
    assert spread_on_sample(sample, {0}) == {0, 1}


def test_estimate_extremes(star5):
    full = sample_live_edges(star5, DiffusionSpec('uic', p=1.0, replicas=10))
    estimate = estimate_influence(full, {3})
    assert (estimate.mean, estimate.stderr) == (5.0, 0.0)
    empty = sample_live_edges(star5, DiffusionSpec('uic', p=0.0, replicas=10))
    assert estimate_influence(empty, {1, 2}).mean == 2.0
    weights = [2.0, 1.0, 0.5, 1.0, 1.0]
    assert estimate_influence(empty, {0, 2}, weights=weights).mean == 2.5


def test_estimate_on_path_matches_closed_form(path4):
    samples = sample_live_edges(path4, DiffusionSpec('uic', p=0.5, replicas=5000, seed=11))
    estimate = estimate_influence(samples, {0})
    assert abs(estimate.mean - 1.875) <= 3 * estimate.stderr


def test_estimate_rejects_foreign_graph_and_blocked_seeds(star5, path4):
    blocked = block(star5, {0})
    samples = sample_live_edges(blocked, DiffusionSpec('uic', p=0.5, replicas=10))
    with pytest.raises(UsageError):
        estimate_influence(samples, {1}, graph=path4)
    with pytest.raises(UsageError):
        estimate_influence(samples, {0})
    assert estimate_influence(samples, {1}, graph=blocked).mean == 1.0


def test_blocked_nodes_never_activate(star5):
    blocked = block(star5, {0})
    samples = sample_live_edges(blocked, DiffusionSpec('uic', p=1.0, replicas=3))
    for sample in samples:
        activated = {blocked.origin[i] for i in spread_on_sample(sample, {0})}
        assert 0 not in activated


def test_stderr_halves_when_replicas_quadruple():
    graph = gen_er(30, 0.1, seed=5)
    hub = {int(np.argmax(graph.out_degrees()))}
    small = estimate_influence(sample_live_edges(graph, DiffusionSpec('uic', p=0.3, replicas=500, seed=1)), hub)
    large = estimate_influence(sample_live_edges(graph, DiffusionSpec('uic', p=0.3, replicas=2000, seed=1)), hub)
    assert small.stderr / large.stderr == pytest.approx(2.0, rel=0.2)


def test_fixed_sample_spread_is_monotone_and_submodular():
    graph = gen_er(7, 0.35, seed=21)
    samples = sample_live_edges(graph, DiffusionSpec('uic', p=0.4, replicas=8, seed=2))

    def sigma(nodes):
        return replica_values(samples, sorted(nodes)).sum()

    subsets = [frozenset(c) for r in range(graph.n + 1) for c in itertools.combinations(range(graph.n), r)]
    values = {s: sigma(s) for s in subsets}
    for small, large in itertools.product(subsets, repeat=2):
        if small <= large:
            assert values[small] <= values[large]
            for v in range(graph.n):
                assert values[small | {v}] - values[small] >= values[large | {v}] - values[large]


def test_direct_ic_matches_live_edge_estimate():
    graph = gen_er(30, 0.1, seed=42)
    spec = DiffusionSpec('uic', p=0.3, replicas=20000, seed=6)
    live = replica_values(sample_live_edges(graph, spec), [0, 1])
    rng = make_rng(6, 'direct-ic')
    direct = np.array([len(simulate_ic(graph, {0, 1}, uniform_probability(0.3), rng)) for _ in range(20000)])
    pooled = np.sqrt(live.var(ddof=1) / live.size + direct.var(ddof=1) / direct.size)
    assert abs(live.mean() - direct.mean()) <= 3 * pooled


def test_direct_lt_matches_live_edge_estimate():
    graph = gen_er(30, 0.1, seed=42)
    spec = DiffusionSpec('lt', replicas=5000, seed=7)
    live = replica_values(sample_live_edges(graph, spec), [0, 1])
    rng = make_rng(7, 'direct-lt')
    direct = np.array([len(simulate_lt(graph, {0, 1}, rng)) for _ in range(5000)])
    pooled = np.sqrt(live.var(ddof=1) / live.size + direct.var(ddof=1) / direct.size)
    assert abs(live.mean() - direct.mean()) <= 3 * pooled


def test_direct_simulation_extremes(star5):
    rng = make_rng(0, 'test')
    assert simulate_ic(star5, {0}, uniform_probability(1.0), rng) == set(range(5))
    assert simulate_lt(star5, set(range(5)), rng) == set(range(5))
    wic = spec_probability(star5, DiffusionSpec('wic'))
    assert wic(1, 0) == pytest.approx(0.25)
    assert wic(0, 1) == 1.0
