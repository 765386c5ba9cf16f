"""factory-boy factories for random test graphs.

``ErGraphFactory.build_batch(20, n=10)`` yields twenty graphs with seeds
0..19 (the factory sequence), so oracle suites are reproducible.
"""
import factory

from .generators import gen_ba, gen_er, gen_ws
from .graph import Graph


class _GeneratedGraphFactory(factory.Factory):
    class Meta:
        model = Graph
        abstract = True

    seed = factory.Sequence(lambda k: k)

    @classmethod
    def _build(cls, model_class, *args, **kwargs):
        return cls._generate_graph(**kwargs)

    @classmethod
    def _create(cls, model_class, *args, **kwargs):
        return cls._generate_graph(**kwargs)


class ErGraphFactory(_GeneratedGraphFactory):
    n = 10
    p = 0.3

    @classmethod
    def _generate_graph(cls, n, p, seed):
        return gen_er(n, p, seed=seed)


class WsGraphFactory(_GeneratedGraphFactory):
    n = 10
    k = 2
    beta = 0.15

    @classmethod
    def _generate_graph(cls, n, k, beta, seed):
        return gen_ws(n, k, beta, seed=seed)


class BaGraphFactory(_GeneratedGraphFactory):
    n = 10
    m = 2

    @classmethod
    def _generate_graph(cls, n, m, seed):
        return gen_ba(n, m, seed=seed)
