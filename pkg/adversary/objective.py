from dataclasses import dataclass, field

import numpy as np

from influence_blocking.exceptions import ParameterError
from netgraph.domination import dominated_set
from netgraph.sets import SeedSet, as_block, as_seeds


@dataclass(frozen=True)
class AttackOutcome:
    """Seeds chosen by an attack and the attacker's utility under them."""

    seeds: SeedSet
    value: float
    method: str
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.value < -1e-9:
            raise ParameterError(f'attacker utility must be nonnegative, got {self.value}')


def node_weights(graph, mu=None):
    """``mu`` as a float array, defaulting to the graph's own node weights."""
    if mu is None:
        return np.asarray(graph.weights, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (graph.n,):
        raise ParameterError(f'expected {graph.n} node weights, got shape {mu.shape}')
    if not np.all(np.isfinite(mu)) or np.any(mu < 0):
        raise ParameterError('node weights must be finite and nonnegative')
    return mu


def check_budget(name, k):
    if int(k) != k or k < 0:
        raise ParameterError(f'{name} must be a nonnegative integer, got {k}')
    return int(k)


def eval_F(graph, x, y, mu=None):
    """Weight of the unblocked nodes dominated by the seeds ``y``."""
    x = as_block(x).check_within(graph)
    y = as_seeds(y).check_within(graph).check_disjoint(x)
    mu = node_weights(graph, mu)
    covered = sorted(dominated_set(graph, y) - x.nodes)
    return float(mu[covered].sum()) if covered else 0.0
