"""Greedy attacks: weighted k-MaxVD greedy and CELF influence maximization.

All of them add the candidate with the largest marginal gain and break
ties by the lowest node index.
"""
import heapq
import logging

import numpy as np

from diffusion.live_edge import estimate_influence, reach
from influence_blocking.exceptions import UsageError
from netgraph.domination import block
from netgraph.sets import SeedSet, as_block

from .objective import AttackOutcome, check_budget, eval_F, node_weights

logger = logging.getLogger(__name__)


def greedy_kmaxvd(graph, x, k_A, mu=None):
    x = as_block(x).check_within(graph)
    k_A = check_budget('k_A', k_A)
    mu = node_weights(graph, mu)
    covered = np.zeros(graph.n, dtype=bool)
    covered[list(x.nodes)] = True
    candidates = [i for i in range(graph.n) if i not in x]
    seeds = []
    while len(seeds) < k_A and candidates:
        best, best_gain = None, -1.0
        for v in candidates:
            fresh = [j for j in graph.closed_out(v) if not covered[j]]
            gain = float(mu[sorted(fresh)].sum()) if fresh else 0.0
            if gain > best_gain:
                best, best_gain = v, gain
        seeds.append(best)
        candidates.remove(best)
        covered[list(graph.closed_out(best))] = True
    return AttackOutcome(SeedSet.of(seeds, budget=k_A), eval_F(graph, x, seeds, mu), 'greedy-kmaxvd')


class _Coverage:
    """Per-replica covered flags over a live-edge sample set."""

    def __init__(self, samples, weights):
        self.samples = samples
        self.weights = weights
        self.covered = np.zeros((len(samples), samples.graph.n), dtype=bool)

    def _value(self, reached):
        if not reached:
            return 0.0
        if self.weights is None:
            return float(len(reached))
        return float(self.weights[np.sort(reached)].sum())

    def gain(self, v):
        total = 0.0
        for r, sample in enumerate(self.samples):
            reached = reach(sample, [v], self.covered[r])
            total += self._value(reached)
            self.covered[r, reached] = False
        return total

    def add(self, v):
        for r, sample in enumerate(self.samples):
            reach(sample, [v], self.covered[r])


def _check_blocked(samples, x, graph):
    if graph is not None:
        samples.check_graph(block(graph, x))
    present = [i for i in x.nodes if i in samples.graph.local_index]
    if present:
        raise UsageError(f'live-edge samples still contain blocked nodes {sorted(present)}')


def _outcome(samples, local_seeds, k_A, mu, method, evaluations):
    origin = samples.graph.origin
    seeds = [origin[v] for v in local_seeds]
    estimate = estimate_influence(samples, seeds, weights=mu)
    return AttackOutcome(
        SeedSet.of(seeds, budget=k_A),
        estimate.mean,
        method,
        {'stderr': estimate.stderr, 'replicas': estimate.replicas, 'evaluations': evaluations},
    )


def celf_im(samples, x, k_A, mu=None, graph=None):
    """Lazy-forward greedy influence maximization on a fixed sample set.

    ``samples`` must be drawn on ``block(G, x)``; ``x`` and ``mu`` use the
    original graph's indices, as do the returned seeds.  Pass ``graph=G``
    to have the samples checked against ``block(G, x)``.
    """
    x = as_block(x)
    k_A = check_budget('k_A', k_A)
    _check_blocked(samples, x, graph)
    coverage = _Coverage(samples, samples.local_weights(mu))
    n = samples.graph.n

    heap = [(-coverage.gain(v), v, 0) for v in range(n)]
    heapq.heapify(heap)
    evaluations = n
    chosen = []
    while len(chosen) < k_A and heap:
        neg_gain, v, stamp = heapq.heappop(heap)
        if stamp == len(chosen):
            chosen.append(v)
            coverage.add(v)
            continue
        evaluations += 1
        heapq.heappush(heap, (-coverage.gain(v), v, len(chosen)))
    logger.debug('CELF picked %s with %d gain evaluations', chosen, evaluations)
    return _outcome(samples, chosen, k_A, mu, 'celf-im', evaluations)


def naive_greedy_im(samples, x, k_A, mu=None, graph=None):
    """Plain greedy that re-evaluates every candidate each round."""
    x = as_block(x)
    k_A = check_budget('k_A', k_A)
    _check_blocked(samples, x, graph)
    coverage = _Coverage(samples, samples.local_weights(mu))
    candidates = list(range(samples.graph.n))
    chosen = []
    evaluations = 0
    while len(chosen) < k_A and candidates:
        gains = [coverage.gain(v) for v in candidates]
        evaluations += len(gains)
        best = candidates[int(np.argmax(gains))]
        chosen.append(best)
        coverage.add(best)
        candidates.remove(best)
    return _outcome(samples, chosen, k_A, mu, 'naive-greedy-im', evaluations)
