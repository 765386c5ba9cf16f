"""Solver-independent LP/MILP models.

Models are built row by row with sparse coefficient dicts and turned into
dense numpy arrays only when a solver asks for them.
"""
import copy
import math
from dataclasses import dataclass, field

import numpy as np

from influence_blocking.exceptions import ParameterError

CONTINUOUS = 'continuous'
BINARY = 'binary'

LE, EQ, GE = '<=', '=', '>='
SENSES = (LE, EQ, GE)

MINIMIZE = 'min'
MAXIMIZE = 'max'


@dataclass
class Variable:
    name: str
    lb: float = 0.0
    ub: float = math.inf
    kind: str = CONTINUOUS
    tag: tuple = None


@dataclass
class Constraint:
    coeffs: dict
    sense: str
    rhs: float
    name: str = ''


@dataclass
class MilpModel:
    name: str = 'model'
    sense: str = MINIMIZE
    variables: list = field(default_factory=list)
    constraints: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)
    tags: dict = field(default_factory=dict)

    def add_var(self, name, lb=0.0, ub=math.inf, kind=CONTINUOUS, tag=None, obj=0.0):
        if kind not in (CONTINUOUS, BINARY):
            raise ParameterError(f'unknown variable kind {kind!r}')
        if kind == BINARY:
            lb, ub = max(lb, 0.0), min(ub, 1.0)
        if lb > ub:
            raise ParameterError(f'variable {name}: lower bound {lb} above upper bound {ub}')
        index = len(self.variables)
        self.variables.append(Variable(name, float(lb), float(ub), kind, tag))
        if tag is not None:
            self.tags[tag] = index
        if obj:
            self.objective[index] = float(obj)
        return index

    def add_constraint(self, coeffs, sense, rhs, name=''):
        if sense not in SENSES:
            raise ParameterError(f'unknown constraint sense {sense!r}')
        clean = {}
        for index, value in coeffs.items():
            if not 0 <= index < len(self.variables):
                raise ParameterError(f'constraint {name!r} references unknown variable {index}')
            if not math.isfinite(value):
                raise ParameterError(f'constraint {name!r} has a non-finite coefficient')
            if value != 0:
                clean[index] = clean.get(index, 0.0) + float(value)
        if not math.isfinite(rhs):
            raise ParameterError(f'constraint {name!r} has a non-finite right-hand side')
        self.constraints.append(Constraint(clean, sense, float(rhs), name or f'c{len(self.constraints)}'))
        return len(self.constraints) - 1

    def set_objective(self, coeffs, sense=MINIMIZE):
        if sense not in (MINIMIZE, MAXIMIZE):
            raise ParameterError(f'unknown objective sense {sense!r}')
        self.sense = sense
        self.objective = {i: float(v) for i, v in coeffs.items() if v != 0}

    def var(self, tag):
        return self.tags[tag]

    @property
    def num_vars(self):
        return len(self.variables)

    @property
    def num_constraints(self):
        return len(self.constraints)

    @property
    def integer_indices(self):
        return [i for i, v in enumerate(self.variables) if v.kind == BINARY]

    @property
    def is_mip(self):
        return any(v.kind == BINARY for v in self.variables)

    def count(self, kind):
        return sum(1 for v in self.variables if v.kind == kind)

    def copy(self):
        return copy.deepcopy(self)

    def relaxed(self):
        model = self.copy()
        for variable in model.variables:
            variable.kind = CONTINUOUS
        return model

    def objective_value(self, values):
        return sum(coef * values[i] for i, coef in self.objective.items())

    def to_arrays(self):
        """Dense ``(c, A, senses, b, lb, ub)``."""
        c = np.zeros(self.num_vars)
        for i, value in self.objective.items():
            c[i] = value
        A = np.zeros((self.num_constraints, self.num_vars))
        b = np.zeros(self.num_constraints)
        senses = []
        for r, row in enumerate(self.constraints):
            for i, value in row.coeffs.items():
                A[r, i] = value
            b[r] = row.rhs
            senses.append(row.sense)
        lb = np.array([v.lb for v in self.variables])
        ub = np.array([v.ub for v in self.variables])
        return c, A, senses, b, lb, ub

    def structurally_equal(self, other, tol=1e-12):
        """Same variables, bounds, kinds, rows and objective (names and tags ignored)."""
        if (self.sense, self.num_vars, self.num_constraints) != (other.sense, other.num_vars, other.num_constraints):
            return False
        for a, b in zip(self.variables, other.variables):
            if a.kind != b.kind or a.lb != b.lb or a.ub != b.ub:
                return False
        for a, b in zip(self.constraints, other.constraints):
            if a.sense != b.sense or abs(a.rhs - b.rhs) > tol or a.coeffs.keys() != b.coeffs.keys():
                return False
            if any(abs(a.coeffs[i] - b.coeffs[i]) > tol for i in a.coeffs):
                return False
        if self.objective.keys() != other.objective.keys():
            return False
        return all(abs(self.objective[i] - other.objective[i]) <= tol for i in self.objective)
