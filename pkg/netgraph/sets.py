from dataclasses import dataclass

from influence_blocking.exceptions import ParameterError, UsageError


@dataclass(frozen=True)
class NodeSet:
    nodes: frozenset
    budget: int

    def __post_init__(self):
        object.__setattr__(self, 'nodes', frozenset(int(i) for i in self.nodes))
        if self.budget < 0:
            raise ParameterError(f'budget must be nonnegative, got {self.budget}')
        if any(i < 0 for i in self.nodes):
            raise ParameterError('node indices must be nonnegative')
        if len(self.nodes) > self.budget:
            raise ParameterError(f'{len(self.nodes)} nodes exceed budget {self.budget}')

    @classmethod
    def of(cls, nodes=(), budget=None):
        nodes = frozenset(nodes)
        return cls(nodes, len(nodes) if budget is None else budget)

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(sorted(self.nodes))

    def __contains__(self, node):
        return node in self.nodes

    def sorted(self):
        return sorted(self.nodes)

    def check_within(self, graph):
        for i in self.nodes:
            graph.check_node(i)
        return self


class BlockSet(NodeSet):
    """Nodes the defender removes (``x`` in the models)."""

    @property
    def blocked(self):
        return self.nodes


class SeedSet(NodeSet):
    """Nodes the attacker seeds (``y`` in the models)."""

    @property
    def seeds(self):
        return self.nodes

    def check_disjoint(self, block):
        overlap = self.nodes & block.nodes
        if overlap:
            raise UsageError(f'seeds {sorted(overlap)} are blocked')
        return self


def as_block(x):
    return x if isinstance(x, BlockSet) else BlockSet.of(x or ())


def as_seeds(y):
    return y if isinstance(y, SeedSet) else SeedSet.of(y or ())
