"""Constraint generation: a master over accumulated attacks, an exact best response as oracle.

Each attack ``y`` seen so far becomes a cut that charges the master for
the weight ``y`` still dominates once blocked seeds and blocked targets
are dropped:

    u[i, t] >= mu_i (1 - x_i - x_j)   for every seed j of cut t dominating i
    z >= sum_i u[i, t]

At binary ``x`` the cut evaluates exactly the utility of the repaired
attack, a lower bound on the best response, so the master value never
exceeds the minimax value and stopping when ``v <= z + gap`` is sound.
"""
import logging
import time

from adversary.br_milp import best_response_milp
from adversary.objective import check_budget, node_weights
from influence_blocking.conf import app_setting
from influence_blocking.exceptions import ParameterError
from netgraph.domination import dominated_set
from netgraph.sets import BlockSet
from optikit.model import BINARY, GE, LE, MINIMIZE, MilpModel

from .def_milp import solve_defense_model
from .results import DefenseResult

logger = logging.getLogger(__name__)


class CutPool:
    """The master problem together with the attacks it has absorbed."""

    def __init__(self, graph, k_D, mu):
        self.graph = graph
        self.mu = mu
        self.seed_sets = []
        self.u = []
        self.model = MilpModel(name='cg-master', sense=MINIMIZE)
        self.x = [self.model.add_var(f'x[{i}]', kind=BINARY, tag=('x', i)) for i in range(graph.n)]
        self.z = self.model.add_var('z', tag=('z',), obj=1.0)
        self.model.add_constraint({j: 1.0 for j in self.x}, LE, k_D, name='defense_budget')

    def __len__(self):
        return len(self.seed_sets)

    def __contains__(self, seeds):
        return frozenset(seeds) in self.seed_sets

    def add_cut(self, seeds):
        """Add the cut for ``seeds``; returns ``False`` when it is already in the pool."""
        seeds = frozenset(seeds)
        if seeds in self.seed_sets:
            return False
        t = len(self.seed_sets)
        model, x, mu = self.model, self.x, self.mu
        u = {}
        for i in sorted(dominated_set(self.graph, seeds)):
            u[i] = model.add_var(f'u[{i},{t}]', tag=('u', i, t))
            for j in sorted(seeds & set(self.graph.closed_in(i))):
                coeffs = {u[i]: 1.0}
                coeffs[x[i]] = mu[i]
                coeffs[x[j]] = coeffs.get(x[j], 0.0) + mu[i]
                model.add_constraint(coeffs, GE, mu[i], name=f'cut[{t}][{i},{j}]')
        coeffs = {self.z: 1.0}
        coeffs.update({index: -1.0 for index in u.values()})
        model.add_constraint(coeffs, GE, 0.0, name=f'cut[{t}]')
        self.seed_sets.append(seeds)
        self.u.append(u)
        return True


def constraint_generation(
    graph, k_D, k_A, mu=None, gap=0.0, max_iterations=None, time_limit=None, params=None, backend=None,
):
    """Exact defense (up to ``gap``) by alternating master and best response.

    On an iteration or time limit the best block set seen so far is
    returned with the certified interval ``[master value, its BR value]``.
    """
    k_D = check_budget('k_D', k_D)
    k_A = check_budget('k_A', k_A)
    if gap < 0:
        raise ParameterError(f'gap must be nonnegative, got {gap}')
    if k_D > graph.n:
        raise ParameterError(f'k_D={k_D} exceeds the {graph.n} nodes of the graph')
    mu = node_weights(graph, mu)
    max_iterations = app_setting('CG_MAX_ITERATIONS') if max_iterations is None else max_iterations
    time_limit = app_setting('CG_TIME_LIMIT') if time_limit is None else time_limit
    if max_iterations < 1:
        raise ParameterError(f'max_iterations must be positive, got {max_iterations}')
    run_params = {'k_D': k_D, 'k_A': k_A, 'gap': gap}

    start = time.perf_counter()
    pool = CutPool(graph, k_D, mu)
    log = []
    best = None
    blocked, master_value = [], 0.0
    status = 'LimitReached'

    for iteration in range(1, max_iterations + 1):
        if pool:
            result = solve_defense_model(pool.model, params, backend)
            blocked = [i for i, index in enumerate(pool.x) if result.values[index] > 0.5]
            master_value = float(result.objective)
        response = best_response_milp(graph, blocked, k_A, mu, params, backend)
        value = response.value
        if best is None or value < best[1]:
            best = (blocked, value)
        entry = {
            'iteration': iteration,
            'master': master_value,
            'response': value,
            'blocked': list(blocked),
            'seeds': response.seeds.sorted(),
        }
        log.append(entry)
        logger.info('CG iteration %d: master %.6f, best response %.6f', iteration, master_value, value)

        if value <= master_value + gap + 1e-6:
            status = 'Optimal' if gap == 0 else 'WithinGap'
            best = (blocked, value)
            break
        if not pool.add_cut(response.seeds.seeds):
            logger.warning('CG produced a repeated cut %s; stopping', response.seeds.sorted())
            status = 'RepeatedCut'
            break
        entry['cut_added'] = True
        if time_limit is not None and time.perf_counter() - start > time_limit:
            break

    blocked, value = best
    return DefenseResult(
        BlockSet.of(blocked, budget=k_D),
        value,
        'cg' if gap == 0 else f'cg-gap{gap:g}',
        run_params,
        {
            'status': status,
            'lower_bound': master_value,
            'upper_bound': value,
            'cuts': len(pool),
            'seconds': time.perf_counter() - start,
        },
        iterations=log,
    )
