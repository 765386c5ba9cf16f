"""Direct cascade simulation, used to cross-check the live-edge estimates."""
import numpy as np

from .specs import arc_probabilities


def uniform_probability(p):
    return lambda u, v: p


def spec_probability(graph, spec):
    """``p_fn`` reproducing the arc probabilities of ``spec`` on ``graph``."""
    src, dst = graph.arcs
    table = dict(zip(zip(src.tolist(), dst.tolist()), arc_probabilities(graph, spec).tolist()))
    return lambda u, v: table[(u, v)]


def simulate_ic(graph, seeds, p_fn, rng):
    """Independent cascade: each newly active node tries each out-arc once."""
    active = set(seeds)
    frontier = list(active)
    while frontier:
        newly = []
        for u in frontier:
            for v in graph.out_adj[u]:
                if v not in active and rng.random() < p_fn(u, v):
                    active.add(v)
                    newly.append(v)
        frontier = newly
    return active


def simulate_lt(graph, seeds, rng):
    """Linear threshold with weights ``1 / indeg(v)`` and thresholds ``U[0, 1]`` per run."""
    thresholds = rng.random(graph.n)
    in_degree = graph.in_degrees()
    pressure = np.zeros(graph.n)
    active = set(seeds)
    frontier = list(active)
    while frontier:
        newly = []
        for u in frontier:
            for v in graph.out_adj[u]:
                if v in active:
                    continue
                pressure[v] += 1.0 / in_degree[v]
                if pressure[v] >= thresholds[v]:
                    active.add(v)
                    newly.append(v)
        frontier = newly
    return active
