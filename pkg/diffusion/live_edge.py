"""Live-edge samples: pre-drawn diffusion realizations.

Under IC every arc is kept independently with its activation probability;
under LT every node keeps at most one in-arc, chosen with probability equal
to its threshold weight.  Spread on a sample is plain reachability, so a
fixed sample set turns influence into a deterministic set function that
every seed-set comparison in an experiment can share.
"""
import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from influence_blocking.exceptions import UsageError
from netgraph.rng import make_rng
from netgraph.sets import as_seeds

from .specs import arc_probabilities, in_degree_weights

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LiveEdgeSample:
    """Kept arcs of one replica in CSR form over the sampled graph's nodes."""

    indptr: np.ndarray
    indices: np.ndarray

    @property
    def size(self):
        return int(self.indices.size)

    def successors(self, u):
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def arcs(self):
        src = np.repeat(np.arange(self.indptr.size - 1), np.diff(self.indptr))
        return list(zip(src.tolist(), self.indices.tolist()))


@dataclass(frozen=True, eq=False)
class LiveEdgeSampleSet:
    graph: object
    spec: object
    samples: tuple

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    @property
    def provenance(self):
        return self.spec, self.graph.digest

    def check_graph(self, graph):
        spec, digest = self.provenance
        if graph.digest != digest:
            raise UsageError(f'live-edge samples ({spec.model}) were drawn on a different graph')
        return self

    def local_nodes(self, nodes):
        """Map nodes given in ``origin`` indices onto sample-graph indices."""
        index = self.graph.local_index
        local = []
        for node in nodes:
            if node not in index:
                raise UsageError(f'node {node} is not part of the sampled graph (blocked?)')
            local.append(index[node])
        return local

    def local_weights(self, weights):
        if weights is None:
            return None
        weights = np.asarray(weights, dtype=float)
        origin = np.asarray(self.graph.origin, dtype=np.int64)
        if origin.size and origin.max() >= weights.size:
            raise UsageError(f'{weights.size} weights do not cover the sampled graph')
        return weights[origin]


def _to_csr(n, src, dst, keep):
    counts = np.bincount(src[keep], minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return LiveEdgeSample(indptr=indptr, indices=dst[keep].copy())


def _lt_choice(graph, rng):
    """One live in-arc per node with in-degree > 0 (the LT weights sum to 1)."""
    src, dst = graph.arcs
    keep = np.zeros(src.size, dtype=bool)
    order = np.argsort(dst, kind='stable')
    in_degree = graph.in_degrees()
    start = np.zeros(graph.n + 1, dtype=np.int64)
    np.cumsum(in_degree, out=start[1:])
    draws = rng.random(graph.n)
    weights = in_degree_weights(graph)
    for v in np.flatnonzero(in_degree):
        arcs = order[start[v]:start[v + 1]]
        cumulative = np.cumsum(weights[arcs])
        pick = int(np.searchsorted(cumulative, draws[v], side='right'))
        if pick < arcs.size:
            keep[arcs[pick]] = True
    return keep


def sample_live_edges(graph, spec):
    """Draw ``spec.replicas`` live-edge samples; replica ``r`` uses stream ``(seed, r)``."""
    src, dst = graph.arcs
    probabilities = None if spec.model == 'lt' else arc_probabilities(graph, spec)
    samples = []
    for replica in range(spec.replicas):
        rng = make_rng(spec.seed, 'live-edge', replica)
        if spec.model == 'lt':
            keep = _lt_choice(graph, rng)
        else:
            keep = rng.random(src.size) < probabilities
        samples.append(_to_csr(graph.n, src, dst, keep))
    logger.debug('drew %d %s live-edge samples on %r', spec.replicas, spec.model, graph)
    return LiveEdgeSampleSet(graph=graph, spec=spec, samples=tuple(samples))


def reach(sample, sources, covered):
    """Nodes reachable from ``sources`` that are not yet ``covered``; marks them covered."""
    queue = deque()
    reached = []
    for s in sources:
        if not covered[s]:
            covered[s] = True
            reached.append(s)
            queue.append(s)
    while queue:
        u = queue.popleft()
        for v in sample.successors(u):
            if not covered[v]:
                covered[v] = True
                reached.append(int(v))
                queue.append(v)
    return reached


def spread_on_sample(sample, seeds, n=None):
    """Nodes reachable from ``seeds`` along the sample's arcs, seeds included."""
    n = sample.indptr.size - 1 if n is None else n
    covered = np.zeros(n, dtype=bool)
    return set(reach(sample, list(seeds), covered))


@dataclass(frozen=True)
class InfluenceEstimate:
    mean: float
    stderr: float
    replicas: int


def replica_values(samples, local_seeds, local_weights=None):
    values = np.empty(len(samples))
    n = samples.graph.n
    for r, sample in enumerate(samples):
        covered = np.zeros(n, dtype=bool)
        reach(sample, local_seeds, covered)
        values[r] = covered.sum() if local_weights is None else local_weights[covered].sum()
    return values


def estimate_influence(samples, seeds, weights=None, graph=None):
    """Mean (and standard error) of the spread of ``seeds`` over the samples.

    ``seeds`` and ``weights`` use the sampled graph's ``origin`` indices,
    i.e. indices of the graph before blocking.  Passing ``graph`` checks
    that the samples were drawn on it.
    """
    if graph is not None:
        samples.check_graph(graph)
    local_seeds = samples.local_nodes(as_seeds(seeds))
    values = replica_values(samples, local_seeds, samples.local_weights(weights))
    count = values.size
    stderr = float(values.std(ddof=1) / np.sqrt(count)) if count > 1 else 0.0
    return InfluenceEstimate(mean=float(values.mean()), stderr=stderr, replicas=count)
