"""Random graph generators and Forest Fire subsampling.

Every generator is a pure function of its parameters and seed: draws come
from ``make_rng(seed, <generator name>)``.
"""
import logging

import numpy as np

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import ParameterError

from .graph import Graph
from .rng import make_rng

logger = logging.getLogger(__name__)


def _check_probability(name, value, upper_open=False):
    if not 0 <= value <= 1 or (upper_open and value == 1):
        raise ParameterError(f'{name} must lie in [0, 1{")" if upper_open else "]"}, got {value}')


def gen_er(n, p, seed=0):
    """Erdos-Renyi G(n, p): every unordered pair is an edge with probability ``p``."""
    if n < 1:
        raise ParameterError(f'n must be at least 1, got {n}')
    _check_probability('p', p)
    rng = make_rng(seed, 'er')
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p
    return Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def gen_ws(n, k, beta, seed=0):
    """Watts-Strogatz: ring lattice to the ``k`` next successors, then rewiring.

    Each lattice edge ``(u, v)`` is, with probability ``beta``, replaced by
    ``(u, w)`` with ``w`` uniform among nodes not already adjacent to ``u``.
    """
    if not 1 <= k < n:
        raise ParameterError(f'need 1 <= k < n, got k={k}, n={n}')
    _check_probability('beta', beta)
    adjacency = [set() for _ in range(n)]
    lattice = []
    for u in range(n):
        for step in range(1, k + 1):
            v = (u + step) % n
            if v != u and v not in adjacency[u]:
                adjacency[u].add(v)
                adjacency[v].add(u)
                lattice.append((u, v))

    rng = make_rng(seed, 'ws')
    for u, v in lattice:
        if rng.random() >= beta:
            continue
        choices = [w for w in range(n) if w != u and w not in adjacency[u]]
        if not choices:
            continue
        w = choices[int(rng.integers(len(choices)))]
        adjacency[u].discard(v)
        adjacency[v].discard(u)
        adjacency[u].add(w)
        adjacency[w].add(u)

    edges = [(u, v) for u in range(n) for v in adjacency[u] if u < v]
    return Graph.from_edges(n, edges)


def gen_ba(n, m, seed=0):
    """Barabasi-Albert preferential attachment grown from an ``m``-clique."""
    if not 1 <= m < n:
        raise ParameterError(f'need 1 <= m < n, got m={m}, n={n}')
    rng = make_rng(seed, 'ba')
    edges = [(u, v) for u in range(m) for v in range(u + 1, m)]
    # each node appears once per incident edge
    endpoints = [u for edge in edges for u in edge]
    for new in range(m, n):
        targets = set()
        while len(targets) < m:
            if endpoints:
                targets.add(endpoints[int(rng.integers(len(endpoints)))])
            else:
                targets.add(int(rng.integers(new)))
        for t in sorted(targets):
            edges.append((t, new))
            endpoints.extend((t, new))
    return Graph.from_edges(n, edges)


def forest_fire_sample(graph, target_n, p_f=None, seed=0):
    """Forest Fire sample of ``target_n`` nodes (forward burning only).

    Fires start from uniformly random unburned ambassadors and restart
    whenever they burn out.  Each burning node ignites a geometric number
    (mean ``p_f / (1 - p_f)``) of its unburned out-neighbours.  The result
    is the induced subgraph with labels and weights preserved.
    """
    if p_f is None:
        p_f = app_setting('FOREST_FIRE_FORWARD')
    if target_n < 1:
        raise ParameterError(f'target_n must be at least 1, got {target_n}')
    if target_n > graph.n:
        raise ParameterError(f'target_n={target_n} exceeds graph size {graph.n}')
    _check_probability('p_f', p_f, upper_open=True)

    rng = make_rng(seed, 'forest-fire')
    burned = np.zeros(graph.n, dtype=bool)
    count = 0
    restarts = 0
    while count < target_n:
        unburned = np.flatnonzero(~burned)
        ambassador = int(unburned[rng.integers(unburned.size)])
        burned[ambassador] = True
        count += 1
        restarts += 1
        frontier = [ambassador]
        while frontier and count < target_n:
            v = frontier.pop(0)
            fresh = [w for w in graph.out_adj[v] if not burned[w]]
            if not fresh:
                continue
            spread = min(int(rng.geometric(1.0 - p_f)) - 1, len(fresh), target_n - count)
            if spread <= 0:
                continue
            for idx in sorted(rng.choice(len(fresh), size=spread, replace=False).tolist()):
                w = fresh[idx]
                burned[w] = True
                count += 1
                frontier.append(w)

    logger.debug('forest fire burned %d nodes with %d ambassadors', count, restarts)
    return graph.induced(np.flatnonzero(burned).tolist(), keep_origin=False)
