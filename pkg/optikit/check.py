import math
from dataclasses import dataclass

import numpy as np

from influence_blocking.exceptions import ParameterError

from .model import BINARY, EQ, GE, LE


@dataclass(frozen=True)
class Violation:
    kind: str
    index: int
    name: str
    amount: float

    def __str__(self):
        return f'{self.kind} {self.name}: violated by {self.amount:.6g}'


def check_solution(model, values, tol=1e-6):
    """Every row, bound and integrality violation of ``values`` beyond ``tol``.

    An empty list means the point is feasible.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (model.num_vars,):
        raise ParameterError(f'expected {model.num_vars} values, got shape {values.shape}')

    report = []
    for r, row in enumerate(model.constraints):
        lhs = sum(coef * values[i] for i, coef in row.coeffs.items())
        excess = 0.0
        if row.sense in (LE, EQ):
            excess = max(excess, lhs - row.rhs)
        if row.sense in (GE, EQ):
            excess = max(excess, row.rhs - lhs)
        if excess > tol:
            report.append(Violation('row', r, row.name, excess))

    for j, variable in enumerate(model.variables):
        value = values[j]
        excess = max(variable.lb - value, value - variable.ub, 0.0)
        if excess > tol:
            report.append(Violation('bound', j, variable.name, excess))
        if variable.kind == BINARY:
            distance = abs(value - round(value))
            if distance > tol or not math.isfinite(value):
                report.append(Violation('integrality', j, variable.name, distance))
    return report
