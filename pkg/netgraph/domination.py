"""Blocking views and the domination primitives behind the k-MaxVD proxy.

A seed ``v`` dominates itself and its out-neighbours, so the nodes that
can dominate ``i`` are ``i`` and its in-neighbours.  For undirected graphs
both reduce to the closed neighbourhood.
"""
from .sets import as_block


def block(graph, block_set):
    """Induced subgraph on the unblocked nodes; ``origin`` maps back to ``graph``."""
    block_set = as_block(block_set).check_within(graph)
    return graph.induced(i for i in range(graph.n) if i not in block_set.nodes)


def dominators(graph, i):
    graph.check_node(i)
    return set(graph.closed_in(i))


def dominated_set(graph, nodes):
    covered = set()
    for v in nodes:
        covered.update(graph.closed_out(graph.check_node(v)))
    return covered
