import networkx as nx
import numpy as np
from scipy import sparse

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import ParameterError

CENTRALITY_KINDS = ('degree', 'betweenness', 'pagerank')


def pagerank(graph, damping=None, tol=None, max_iter=None):
    """Power iteration with uniform teleportation; dangling mass is spread uniformly.

    Stops once the L1 change drops below ``tol`` or after ``max_iter`` sweeps.
    """
    damping = app_setting('PAGERANK_DAMPING') if damping is None else damping
    tol = app_setting('PAGERANK_TOL') if tol is None else tol
    max_iter = app_setting('PAGERANK_MAX_ITER') if max_iter is None else max_iter

    n = graph.n
    src, dst = graph.arcs
    out_degree = graph.out_degrees().astype(float)
    dangling = out_degree == 0
    # transition[v, u] = 1 / outdeg(u) for every arc u -> v
    transition = sparse.csr_matrix(
        (1.0 / out_degree[src], (dst, src)), shape=(n, n)
    )
    rank = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        previous = rank
        rank = damping * (transition @ previous + previous[dangling].sum() / n) + (1.0 - damping) / n
        if np.abs(rank - previous).sum() < tol:
            break
    return rank


def centrality(graph, kind):
    """Score every node; ``degree`` is the out-degree on directed graphs.

    ``betweenness`` is the unnormalised Brandes count (unordered pairs on
    undirected graphs).
    """
    if graph.n == 0:
        raise ParameterError('centrality of an empty graph')
    if kind == 'degree':
        return graph.out_degrees().astype(float)
    if kind == 'betweenness':
        scores = nx.betweenness_centrality(graph.to_networkx(), normalized=False)
        return np.array([scores[i] for i in range(graph.n)])
    if kind == 'pagerank':
        return pagerank(graph)
    raise ParameterError(f'unknown centrality {kind!r}; expected one of {CENTRALITY_KINDS}')


def rank_nodes(scores, candidates=None):
    """Nodes in descending score order, ties broken by ascending index."""
    nodes = range(len(scores)) if candidates is None else candidates
    return sorted(nodes, key=lambda i: (-scores[i], i))
