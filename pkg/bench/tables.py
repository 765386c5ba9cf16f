"""Integrality-gap, CG-versus-MILP and pruning trade-off tables."""
import logging
import time

import pandas as pd

from adversary.br_milp import best_response_lp, best_response_milp
from blockade.constraint_generation import constraint_generation
from blockade.def_milp import def_milp, pruned_milp
from blockade.oracles import brute_force_defense
from diffusion.specs import DiffusionSpec
from influence_blocking.exceptions import InfluenceBlockingError
from netgraph.generators import gen_er
from netgraph.rng import derive_seed

from .strategies import run_attack

logger = logging.getLogger(__name__)

GAP_COLUMNS = ['k_A', 'M_LP', 'M_MILP', 'gap_permille', 'status']
CG_COLUMNS = ['n', 'instance', 'method', 'utility', 'bound', 'seconds', 'status']
TRADEOFF_COLUMNS = ['l_d', 'seconds', 'U_IM', 'U_IM_stderr', 'U_kMaxVD', 'status']


def gap_table(graph, k_A_values, mu=None, params=None, backend=None):
    """``M_LP`` and ``M_MILP`` on the unblocked graph; the gap is in per-mille of ``M_MILP``."""
    rows = []
    for k_A in k_A_values:
        m_lp = best_response_lp(graph, (), k_A, mu, params, backend)
        response = best_response_milp(graph, (), k_A, mu, params, backend)
        m_milp = response.value
        # the LP relaxation never undercuts the MILP; anything below is simplex round-off
        if m_lp < m_milp and m_milp - m_lp <= 1e-6 * (1 + abs(m_milp)):
            m_lp = m_milp
        gap = 1000.0 * (m_lp - m_milp) / m_milp if m_milp > 0 else 0.0
        status = response.diagnostics.get('status', 'Optimal')
        if status != 'Optimal':
            logger.warning('k_A=%d: best response stopped with %s', k_A, status)
        rows.append({'k_A': k_A, 'M_LP': m_lp, 'M_MILP': m_milp, 'gap_permille': gap, 'status': status})
    return pd.DataFrame(rows, columns=GAP_COLUMNS)


def _timed(run):
    start = time.perf_counter()
    try:
        result = run()
    except InfluenceBlockingError as error:
        return None, time.perf_counter() - start, str(error)
    return result, time.perf_counter() - start, result.diagnostics.get('status', 'Optimal')


def cg_compare_table(sizes, instances, gaps=(0,), k_D=5, k_A=5, p=0.1, seed=0, oracle=False, params=None,
                     backend=None):
    """DEF-MILP against constraint generation on ER graphs of growing size.

    ``utility`` is the exact best response to each method's blocks.  With
    ``oracle`` set, a ``brute-force`` row is added per instance.
    """
    rows = []
    for n in sizes:
        for instance in range(instances):
            graph = gen_er(n, p, seed=derive_seed(seed, 'cg-compare', n, instance))
            runs = [('def-milp', lambda: def_milp(graph, k_D, k_A, params=params, backend=backend))]
            runs += [
                (
                    'cg' if gap == 0 else f'cg-gap{gap:g}',
                    lambda gap=gap: constraint_generation(graph, k_D, k_A, gap=gap, params=params, backend=backend),
                )
                for gap in gaps
            ]
            if oracle:
                runs.append(('brute-force', lambda: brute_force_defense(graph, k_D, k_A)))
            for method, run in runs:
                result, seconds, status = _timed(run)
                row = {'n': n, 'instance': instance, 'method': method, 'seconds': seconds, 'status': status}
                if result is not None:
                    row['utility'] = best_response_milp(graph, result.blocked, k_A, params=params, backend=backend).value
                    row['bound'] = result.bound
                else:
                    logger.error('n=%d instance %d: %s failed: %s', n, instance, method, status)
                rows.append(row)
    return pd.DataFrame(rows, columns=CG_COLUMNS)


def cg_compare_summary(frame):
    grouped = frame.groupby(['n', 'method'], sort=True)
    return grouped.agg(utility=('utility', 'mean'), seconds=('seconds', 'median')).reset_index()


def tradeoff_table(graph, k_D, k_A, l_d_values, order='degree', mu=None, p=0.4, replicas=None, seed=0):
    """Pruned-MILP per candidate size, scored by the exact k-MaxVD and the IM attacker."""
    rows = []
    diffusion = DiffusionSpec(model='uic', p=p, seed=seed)
    for l_d in l_d_values:
        start = time.perf_counter()
        try:
            result = pruned_milp(graph, k_D, k_A, mu, l_d=l_d, order=order)
        except InfluenceBlockingError as error:
            logger.error('l_d=%d failed: %s', l_d, error)
            rows.append({'l_d': l_d, 'seconds': time.perf_counter() - start, 'status': str(error)})
            continue
        seconds = time.perf_counter() - start
        attack_seed = derive_seed(seed, 'tradeoff', k_A)
        im = run_attack('im-ic', graph, result.blocked, k_A, mu, attack_seed, diffusion.derive(seed=attack_seed),
                        eval_replicas=replicas)
        kmaxvd = run_attack('kmaxvd', graph, result.blocked, k_A, mu)
        rows.append({
            'l_d': l_d,
            'seconds': seconds,
            'U_IM': im.utility,
            'U_IM_stderr': im.stderr,
            'U_kMaxVD': kmaxvd.utility,
            'status': result.diagnostics.get('status', 'Optimal'),
        })
    return pd.DataFrame(rows, columns=TRADEOFF_COLUMNS)
