import io
import itertools

import numpy as np
import pytest

from influence_blocking.exceptions import ConfigurationError, ParameterError

from .backends import _milp_status, available_backends, external_backend, get_backend, solve
from .branch_and_bound import MilpParams, solve_milp
from .check import check_solution
from .lp_format import read_lp, write_lp
from .model import BINARY, CONTINUOUS, EQ, GE, LE, MAXIMIZE, MINIMIZE, MilpModel
from .results import SolveStatus
from .simplex import solve_lp


def knapsack():
    model = MilpModel(name='knapsack')
    a = model.add_var('a', kind=BINARY, obj=10)
    b = model.add_var('b', kind=BINARY, obj=6)
    c = model.add_var('c', kind=BINARY, obj=4)
    model.add_constraint({a: 5, b: 4, c: 3}, LE, 8)
    model.sense = MAXIMIZE
    return model


def random_milp(seed, n_binary=6, n_continuous=2, rows=4):
    rng = np.random.default_rng(seed)
    model = MilpModel(name=f'random-{seed}', sense=MAXIMIZE)
    columns = [model.add_var(f'b{j}', kind=BINARY, obj=rng.integers(1, 10)) for j in range(n_binary)]
    columns += [model.add_var(f'c{j}', ub=2.0, obj=rng.uniform(0, 3)) for j in range(n_continuous)]
    for r in range(rows):
        coeffs = {j: float(rng.integers(0, 6)) for j in columns}
        model.add_constraint(coeffs, LE, float(rng.integers(4, 12)), name=f'cap{r}')
    return model


def test_model_validation():
    model = MilpModel()
    x = model.add_var('x')
    with pytest.raises(ParameterError):
        model.add_var('y', lb=2, ub=1)
    with pytest.raises(ParameterError):
        model.add_constraint({x: 1}, '<', 1)
    with pytest.raises(ParameterError):
        model.add_constraint({x: float('nan')}, LE, 1)
    with pytest.raises(ParameterError):
        model.add_constraint({5: 1}, LE, 1)
    binary = model.add_var('z', lb=-3, ub=7, kind=BINARY)
    assert (model.variables[binary].lb, model.variables[binary].ub) == (0.0, 1.0)


def test_lp_single_row_dual():
    model = MilpModel(sense=MAXIMIZE)
    x = model.add_var('x', obj=1)
    model.add_constraint({x: 1}, LE, 3)
    result = solve_lp(model)
    assert result.optimal
    assert result.objective == pytest.approx(3)
    assert result.duals[0] == pytest.approx(1)
    assert result.dual_objective == pytest.approx(3)


def test_lp_infeasible_pair():
    model = MilpModel()
    x = model.add_var('x', obj=1)
    model.add_constraint({x: 1}, LE, -1)
    model.add_constraint({x: 1}, GE, 0)
    assert solve_lp(model).status == SolveStatus.INFEASIBLE


def test_lp_unbounded():
    model = MilpModel(sense=MAXIMIZE)
    x = model.add_var('x', obj=1)
    y = model.add_var('y')
    model.add_constraint({x: 1, y: -1}, LE, 1)
    assert solve_lp(model).status == SolveStatus.UNBOUNDED


def test_lp_free_and_mirrored_variables():
    model = MilpModel()
    x = model.add_var('x', lb=-np.inf, ub=np.inf, obj=1)
    y = model.add_var('y', lb=-np.inf, ub=4, obj=-1)
    model.add_constraint({x: 1, y: -1}, GE, -2)
    model.add_constraint({x: 1}, EQ, 1.5)
    result = solve_lp(model)
    assert result.optimal
    assert result.values == pytest.approx([1.5, 3.5])
    assert result.objective == pytest.approx(-2.0)
    assert result.dual_objective == pytest.approx(result.objective)


@pytest.mark.parametrize('seed', range(15))
def test_lp_strong_duality_on_random_models(seed):
    model = random_milp(seed).relaxed()
    result = solve_lp(model)
    assert result.optimal
    assert abs(result.objective - result.dual_objective) <= 1e-6 * (1 + abs(result.objective))
    assert check_solution(model, result.values) == []
    # duals of <= rows in a maximisation are nonnegative shadow prices
    assert np.all(result.duals >= -1e-9)


def test_lp_dual_is_rhs_sensitivity():
    model = knapsack().relaxed()
    base = solve_lp(model)
    # a = 1, b = 3/4: b is the marginal item at 6/4 per unit of capacity
    assert base.objective == pytest.approx(14.5)
    assert base.duals[0] == pytest.approx(1.5)
    bumped = model.copy()
    bumped.constraints[0].rhs += 1e-3
    assert (solve_lp(bumped).objective - base.objective) / 1e-3 == pytest.approx(1.5)


def test_milp_knapsack():
    result = solve_milp(knapsack())
    assert result.optimal
    assert result.objective == pytest.approx(16)
    assert np.round(result.values).tolist() == [1, 1, 0]
    assert result.bound >= result.objective - 1e-9


def test_milp_without_integers_matches_lp():
    model = random_milp(4).relaxed()
    lp, milp = solve_lp(model), solve_milp(model)
    assert milp.objective == lp.objective
    assert np.array_equal(milp.values, lp.values)


def test_milp_infeasible():
    model = knapsack()
    model.add_constraint({0: 1, 1: 1, 2: 1}, GE, 3)
    assert solve_milp(model).status == SolveStatus.INFEASIBLE


@pytest.mark.parametrize('seed', range(10))
def test_milp_matches_enumeration(seed):
    model = random_milp(seed, n_binary=8, n_continuous=0, rows=3)
    best = -np.inf
    for bits in itertools.product((0, 1), repeat=8):
        if not check_solution(model, bits):
            best = max(best, model.objective_value(bits))
    result = solve_milp(model, MilpParams(abs_gap=0, rel_gap=0))
    assert result.objective == pytest.approx(best)


def test_milp_node_limit_reports_gap():
    model = random_milp(7, n_binary=14, rows=6)
    result = solve_milp(model, MilpParams(node_limit=1))
    assert result.status in (SolveStatus.FEASIBLE_WITH_GAP, SolveStatus.LIMIT_REACHED, SolveStatus.OPTIMAL)
    if result.has_solution:
        assert result.bound >= result.objective - 1e-9


def test_milp_is_deterministic():
    first, second = solve_milp(random_milp(11)), solve_milp(random_milp(11))
    assert first.objective == second.objective
    assert np.array_equal(first.values, second.values)
    assert first.nodes == second.nodes


def test_check_solution_reports():
    model = knapsack()
    result = solve_milp(model)
    assert check_solution(model, result.values) == []

    fractional = result.values.copy()
    fractional[1] = 0.5
    report = check_solution(model, fractional)
    assert [(v.kind, v.index) for v in report] == [('integrality', 1)]

    report = check_solution(model, [1, 1, 1])
    assert len(report) == 1
    assert report[0].kind == 'row'
    assert report[0].amount == pytest.approx(4)

    with pytest.raises(ParameterError):
        check_solution(model, [1, 1])


def test_lp_round_trip_preserves_structure():
    model = random_milp(5)
    model.add_var('free', lb=-np.inf, ub=np.inf)
    model.add_constraint({0: 1.0, 8: -0.25}, EQ, 0.5, name='link')
    model.add_constraint({}, GE, -1.0)
    buffer = io.StringIO()
    write_lp(model, buffer)
    buffer.seek(0)
    again = read_lp(buffer)
    assert again.structurally_equal(model)
    assert again.name == model.name
    assert [v.kind for v in again.variables] == [v.kind for v in model.variables]


def test_lp_reader_rejects_unknown_variables():
    text = 'Minimize\n obj: + 1.0 x\nSubject To\n r0: + 1.0 y <= 1.0\nBounds\n 0.0 <= x <= +inf\nEnd\n'
    with pytest.raises(ParameterError):
        read_lp(io.StringIO(text))


def test_unregistered_backend():
    assert available_backends() == ['highs', 'reference']
    with pytest.raises(ConfigurationError, match=r"available: \['highs', 'reference'\]"):
        get_backend('cplex')
    with pytest.raises(ConfigurationError):
        solve(knapsack(), backend='gurobi')


def test_highs_status_applies_the_absolute_gap():
    loose, tight = MilpParams(abs_gap=1.0, rel_gap=0.0), MilpParams(abs_gap=0.1, rel_gap=0.0)
    assert _milp_status(0, 10.0, 12.0, tight) == SolveStatus.OPTIMAL
    assert _milp_status(1, 10.0, 10.5, loose) == SolveStatus.OPTIMAL
    assert _milp_status(1, 10.0, 10.5, tight) == SolveStatus.FEASIBLE_WITH_GAP
    assert _milp_status(1, 10.0, None, loose) == SolveStatus.FEASIBLE_WITH_GAP


def test_default_backend_comes_from_settings(settings):
    settings.INFLUENCE_BLOCKING = {**settings.INFLUENCE_BLOCKING, 'SOLVER_BACKEND': 'reference'}
    assert solve(knapsack()).backend == 'reference'


@pytest.mark.parametrize('seed', range(20))
def test_reference_matches_highs(seed):
    model = random_milp(100 + seed)
    reference = external_backend(model, 'reference')
    highs = external_backend(model, 'highs')
    assert reference.optimal and highs.optimal
    assert reference.objective == pytest.approx(highs.objective, abs=1e-6)
    assert highs.backend == 'highs'


def test_highs_lp_duals_match_reference():
    model = random_milp(8).relaxed()
    reference, highs = solve(model, backend='reference'), solve(model, backend='highs')
    assert reference.objective == pytest.approx(highs.objective, abs=1e-6)
    assert highs.dual_objective == pytest.approx(highs.objective, abs=1e-6)


def test_minimisation_with_ge_rows():
    model = MilpModel(sense=MINIMIZE)
    x = model.add_var('x', kind=BINARY, obj=3)
    y = model.add_var('y', kind=BINARY, obj=2)
    z = model.add_var('z', kind=CONTINUOUS, ub=1, obj=2.5)
    model.add_constraint({x: 1, y: 1, z: 1}, GE, 1.5)
    result = solve_milp(model)
    # y plus half of z is cheapest
    assert result.objective == pytest.approx(3.25)
