import enum
from dataclasses import dataclass, field

import numpy as np


class SolveStatus(str, enum.Enum):
    OPTIMAL = 'Optimal'
    FEASIBLE_WITH_GAP = 'FeasibleWithGap'
    INFEASIBLE = 'Infeasible'
    UNBOUNDED = 'Unbounded'
    LIMIT_REACHED = 'LimitReached'

    def __str__(self):
        return self.value


@dataclass
class SolveResult:
    status: SolveStatus
    objective: float = None
    values: np.ndarray = None
    duals: np.ndarray = None
    dual_objective: float = None
    bound: float = None
    nodes: int = 0
    iterations: int = 0
    seconds: float = 0.0
    backend: str = 'reference'
    message: str = ''
    diagnostics: dict = field(default_factory=dict)

    @property
    def optimal(self):
        return self.status == SolveStatus.OPTIMAL

    @property
    def has_solution(self):
        return self.values is not None and self.status in (SolveStatus.OPTIMAL, SolveStatus.FEASIBLE_WITH_GAP)

    def value(self, index):
        return float(self.values[index])

    def summary(self):
        return {
            'status': str(self.status),
            'objective': self.objective,
            'bound': self.bound,
            'nodes': self.nodes,
            'iterations': self.iterations,
            'seconds': self.seconds,
            'backend': self.backend,
        }
