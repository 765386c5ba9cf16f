from dataclasses import dataclass, field

from influence_blocking.exceptions import ParameterError
from netgraph.sets import BlockSet


def canonical_edge(graph, u, v):
    return (u, v) if graph.directed else (min(u, v), max(u, v))


@dataclass(frozen=True)
class EdgeNodePlan:
    """Blocked nodes and edges under a shared budget ``B_D``."""

    nodes: BlockSet
    edges: tuple
    c_n: float
    c_e: float
    budget: float

    def __post_init__(self):
        if self.cost > self.budget + 1e-9:
            raise ParameterError(f'plan costs {self.cost}, above the budget {self.budget}')
        touching = [(u, v) for u, v in self.edges if u in self.nodes or v in self.nodes]
        if touching:
            raise ParameterError(f'blocked edges {touching} touch blocked nodes')

    @property
    def cost(self):
        return len(self.nodes) * self.c_n + len(self.edges) * self.c_e

    def apply(self, graph):
        """``graph`` without the blocked edges (blocked nodes stay for the caller to handle)."""
        return graph.remove_edges(self.edges) if self.edges else graph


@dataclass
class DefenseResult:
    """Blocked set chosen by a defense, with the bound its model certifies.

    ``bound`` is an upper bound on the attacker's relaxed utility for MILP
    defenses and the exact best-response value for constraint generation
    and the brute-force oracles; heuristics leave it ``None``.
    """

    blocked: BlockSet
    bound: float = None
    method: str = ''
    params: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    iterations: list = field(default_factory=list)
    plan: EdgeNodePlan = None

    @property
    def blocked_edges(self):
        return self.plan.edges if self.plan else ()

    def attacked_graph(self, graph):
        """The graph the attacker faces, before node blocking."""
        return self.plan.apply(graph) if self.plan else graph
