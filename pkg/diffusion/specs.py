from dataclasses import dataclass, replace

import numpy as np

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import ParameterError

DIFFUSION_MODELS = ('uic', 'wic', 'lt')


@dataclass(frozen=True)
class DiffusionSpec:
    """Diffusion model plus replica count and seed.

    ``uic`` uses probability ``p`` on every arc, ``wic`` uses
    ``1 / indeg(v)`` on each arc into ``v`` (degree when undirected), and
    ``lt`` uses uniform linear-threshold weights ``1 / indeg(v)``.
    """

    model: str = 'uic'
    p: float = 0.1
    replicas: int = None
    seed: int = 0

    def __post_init__(self):
        if self.model not in DIFFUSION_MODELS:
            raise ParameterError(f'unknown diffusion model {self.model!r}; expected one of {DIFFUSION_MODELS}')
        if not 0 <= self.p <= 1:
            raise ParameterError(f'p must lie in [0, 1], got {self.p}')
        if self.replicas is None:
            object.__setattr__(self, 'replicas', app_setting('EVAL_REPLICAS'))
        if self.replicas < 1:
            raise ParameterError(f'replicas must be at least 1, got {self.replicas}')

    def derive(self, **changes):
        return replace(self, **changes)


def in_degree_weights(graph):
    """``1 / indeg(dst)`` for every arc of ``graph`` (arc order of ``graph.arcs``)."""
    _, dst = graph.arcs
    in_degree = graph.in_degrees().astype(float)
    return 1.0 / in_degree[dst]


def arc_probabilities(graph, spec):
    src, _ = graph.arcs
    if spec.model == 'uic':
        return np.full(src.size, float(spec.p))
    return in_degree_weights(graph)
