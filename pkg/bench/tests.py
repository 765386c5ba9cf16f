import json
from io import StringIO

import pandas as pd
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError
from rest_framework.test import APIClient

from adversary.oracles import brute_force_br
from diffusion.specs import DiffusionSpec
from influence_blocking.exceptions import ParameterError
from netgraph.generators import gen_er
from netgraph.serializers import graph_to_document

from .graphs import build_graph, read_graph, write_graph
from .records import RESULT_COLUMNS, RunRecord, records_frame
from .runner import plan_cells, run_experiment
from .serializers import load_config
from .strategies import run_attack, run_defense
from .tables import cg_compare_table, gap_table, tradeoff_table


@pytest.fixture
def star5_file(tmp_path, star5):
    document, _ = write_graph(star5, tmp_path / 'star5')
    return str(document)


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def small_config(**overrides):
    config = {
        'graphs': [{'id': 'er12', 'model': 'er', 'n': 12, 'p': 0.3, 'instances': 2}],
        'defenses': [{'name': 'def-milp'}, {'name': 'degree'}, {'name': 'random'}],
        'attacks': ['kmaxvd', 'im-ic'],
        'k_D': [2],
        'k_A': [2],
        'diffusion': {'model': 'uic', 'p': 0.2},
        'greedy_replicas': 10,
        'eval_replicas': 20,
        'seed': 7,
    }
    config.update(overrides)
    return load_config(config)


# Graph files

def test_graph_files_round_trip(tmp_path, star5):
    document, edges = write_graph(star5, tmp_path / 'out' / 'star')
    assert read_graph(document).digest == star5.digest
    assert read_graph(edges).m == 4


def test_missing_graph_file(tmp_path):
    with pytest.raises(ParameterError):
        read_graph(tmp_path / 'missing.json')


def test_build_graph_is_seeded_per_instance():
    source = {'id': 'er', 'model': 'er', 'n': 20, 'p': 0.2}
    assert build_graph(source, 1, 0).digest == build_graph(source, 1, 0).digest
    assert build_graph(source, 1, 0).digest != build_graph(source, 1, 1).digest


# Commands

def test_gen_command(tmp_path):
    assert 'n=64' in run('gen', '--model', 'er', '--n', '64', '--p', '0.1', '--seed', '1',
                         '--output', str(tmp_path / 'er'))
    assert read_graph(tmp_path / 'er.json').n == 64
    assert 'm=186' in run('gen', '--model', 'ba', '--n', '64', '--m', '3', '--output', str(tmp_path / 'ba'))


def test_sample_command(tmp_path):
    write_graph(gen_er(200, 0.05, seed=3), tmp_path / 'big')
    output = run('sample', '--graph', str(tmp_path / 'big.json'), '--target-n', '50', '--seed', '2',
                 '--output', str(tmp_path / 'small'))
    assert 'n=50' in output
    assert read_graph(tmp_path / 'small.json').n == 50


def test_defend_command(star5_file):
    document = json.loads(run('defend', '--graph', star5_file, '--method', 'def-milp', '--k-d', '1', '--k-a', '1'))
    assert document['blocked_nodes'] == [0]
    assert document['method'] == 'def-milp'


def test_defend_command_reports_errors(star5_file):
    with pytest.raises(CommandError):
        run('defend', '--graph', star5_file, '--k-d', '9', '--k-a', '1')
    with pytest.raises(CommandError):
        run('defend', '--graph', star5_file, '--method', 'ev-milp', '--k-a', '1')


def test_attack_command(star5_file):
    document = json.loads(run('attack', '--graph', star5_file, '--blocked', '0', '--k-a', '2'))
    assert document['value'] == 2
    assert document['utility'] == 2


def test_eval_command(star5_file):
    out, err = StringIO(), StringIO()
    call_command('eval', '--graph', star5_file, '--seeds', '0', '--p', '1', '--replicas', '20', stdout=out, stderr=err)
    assert json.loads(out.getvalue()) == {'mean': 5.0, 'replicas': 20, 'stderr': 0.0}
    assert err.getvalue().startswith('5.000000 +- 0.000000')


def test_eval_command_rejects_blocked_seeds(star5_file):
    with pytest.raises(CommandError):
        run('eval', '--graph', star5_file, '--blocked', '0', '--seeds', '0')


def test_gap_command(tmp_path, star5_file):
    path = tmp_path / 'gap.csv'
    run('gap', '--graph', star5_file, '--k-a', '1', '2', '--output', str(path))
    frame = pd.read_csv(path)
    assert list(frame['k_A']) == [1, 2]
    assert frame.loc[0, 'M_LP'] == pytest.approx(5)
    assert frame.loc[0, 'M_MILP'] == 5
    assert frame.loc[0, 'gap_permille'] == pytest.approx(0, abs=1e-6)
    assert (frame['M_LP'] >= frame['M_MILP']).all()
    assert (frame['gap_permille'] >= 0).all()


def test_cg_compare_command(tmp_path):
    path = tmp_path / 'cg.csv'
    run('cg_compare', '--sizes', '8', '--instances', '2', '--gaps', '0', '1', '--k-d', '2', '--k-a', '2',
        '--p', '0.3', '--oracle', '--output', str(path))
    frame = pd.read_csv(path).set_index(['instance', 'method'])
    for instance in range(2):
        exact = frame.loc[(instance, 'cg'), 'utility']
        assert exact == frame.loc[(instance, 'brute-force'), 'utility']
        assert frame.loc[(instance, 'def-milp'), 'utility'] >= exact
        assert frame.loc[(instance, 'cg-gap1'), 'utility'] <= exact + 1
    assert (tmp_path / 'cg_summary.csv').exists()


def test_tradeoff_command(tmp_path, star5_file):
    path = tmp_path / 'tradeoff.csv'
    run('tradeoff', '--graph', star5_file, '--k-d', '1', '--k-a', '1', '--l-d', '1', '5', '--replicas', '20',
        '--output', str(path))
    frame = pd.read_csv(path)
    assert list(frame['l_d']) == [1, 5]
    assert frame['U_kMaxVD'].tolist() == [1, 1]
    assert frame['U_IM'].nunique() == 1


def test_experiment_command(tmp_path, star5):
    write_graph(star5, tmp_path / 'star5')
    config = tmp_path / 'config.json'
    config.write_text(json.dumps({
        'graphs': [{'id': 'star', 'model': 'file', 'path': str(tmp_path / 'star5.json')}],
        'defenses': [{'name': 'def-milp'}, {'name': 'wdom'}],
        'attacks': ['kmaxvd'],
        'k_D': [1],
        'k_A': [1, 2],
        'seed': 3,
    }))
    path = tmp_path / 'results.csv'
    run('experiment', str(config), '--output', str(path))
    frame = pd.read_csv(path)
    assert list(frame.columns) == RESULT_COLUMNS
    assert len(frame) == 4
    assert (tmp_path / 'results_summary.csv').exists()


def test_experiment_command_flags_failures(tmp_path):
    config = tmp_path / 'config.json'
    config.write_text(json.dumps({
        'graphs': [{'id': 'er', 'model': 'er', 'n': 6, 'p': 0.5}],
        'defenses': [{'name': 'greedy-blocking'}],
        'attacks': ['kmaxvd'],
        'k_D': [5],
        'k_A': [2],
        'seed': 0,
    }))
    with pytest.raises(CommandError):
        run('experiment', str(config), '--output', str(tmp_path / 'out.csv'))
    frame = pd.read_csv(tmp_path / 'out.csv')
    assert frame['utility'].isna().all()


# Experiment runner

def test_config_validation():
    with pytest.raises(ParameterError):
        small_config(k_D=[13])
    with pytest.raises(ParameterError):
        small_config(graphs=[{'id': 'bad', 'model': 'er'}])
    with pytest.raises(ParameterError):
        small_config(attacks=['guess'])


def test_plan_without_defenses_is_attack_only():
    config = small_config(defenses=[], k_D=[])
    cells = plan_cells(config)
    assert {cell.defense['name'] for cell in cells} == {'none'}
    records = run_experiment(config, workers=1)
    assert {record.defense for record in records} == {'none'}
    assert all(record.k_D == 0 and not record.failed for record in records)


def test_experiment_is_deterministic():
    config = small_config()
    first = records_frame(run_experiment(config, workers=1)).drop(columns='seconds')
    second = records_frame(run_experiment(config, workers=1)).drop(columns='seconds')
    pd.testing.assert_frame_equal(first, second)
    assert len(first) == 2 * 3 * 2


def test_experiment_does_not_depend_on_workers():
    config = small_config(defenses=[{'name': 'degree'}, {'name': 'random'}])
    serial = records_frame(run_experiment(config, workers=1)).drop(columns='seconds')
    parallel = records_frame(run_experiment(config, workers=2)).drop(columns='seconds')
    pd.testing.assert_frame_equal(serial, parallel)


def test_records_replay_through_attack():
    config = small_config(defenses=[{'name': 'degree'}], attacks=['im-ic'])
    record = run_experiment(config, workers=1)[0]
    graph = build_graph(config['graphs'][0], config['seed'], 0)
    defense = run_defense('degree', graph, record.k_D, record.k_A)
    report = run_attack('im-ic', graph, defense.blocked, record.k_A, seed=record.seed,
                        diffusion=DiffusionSpec(model='uic', p=0.2, seed=record.seed),
                        greedy_replicas=10, eval_replicas=20)
    assert report.utility == record.utility


def test_weighted_suite_draws_node_values():
    config = small_config(weighted=True, defenses=[{'name': 'wdom'}], attacks=['wim', 'kmaxvd'])
    records = run_experiment(config, workers=1)
    assert all(not record.failed for record in records)
    assert all(record.utility <= 12 for record in records)


def test_kmaxvd_attack_matches_brute_force(star5):
    report = run_attack('kmaxvd', star5, [0], 2)
    assert report.utility == brute_force_br(star5, [0], 2).value == 2
    assert report.stderr == 0


def test_run_record_rejects_negative_utility():
    with pytest.raises(ParameterError):
        RunRecord('g', 'none', 'kmaxvd', 0, 1, utility=-1.0, stderr=0.0)


def test_unknown_strategies(star5):
    with pytest.raises(ParameterError):
        run_defense('oracle', star5, 1, 1)
    with pytest.raises(ParameterError):
        run_attack('oracle', star5, (), 1)


# Tables

def test_gap_table_on_star(star5):
    frame = gap_table(star5, [1])
    assert frame.loc[0, 'M_LP'] == pytest.approx(5)
    assert frame.loc[0, 'gap_permille'] == pytest.approx(0)


def test_gap_table_is_nonnegative():
    frame = gap_table(gen_er(40, 0.1, seed=4), [2, 4])
    assert (frame['M_LP'] >= frame['M_MILP']).all()
    assert (frame['gap_permille'] >= 0).all()


@pytest.mark.parametrize('seed', [4, 5])
def test_gap_table_absorbs_lp_round_off(seed):
    # M_LP equals M_MILP on these graphs; the raw simplex value lands a few ulps under it
    frame = gap_table(gen_er(100, 0.05, seed=seed), [5])
    assert (frame['M_LP'] >= frame['M_MILP']).all()
    assert (frame['gap_permille'] >= 0).all()
    assert frame.loc[0, 'gap_permille'] == pytest.approx(0, abs=1e-6)


def test_cg_compare_table_orders_methods():
    frame = cg_compare_table([10], 2, gaps=(0,), k_D=2, k_A=2, p=0.3, seed=1)
    by_instance = frame.pivot(index='instance', columns='method', values='utility')
    assert (by_instance['def-milp'] >= by_instance['cg']).all()


def test_tradeoff_table_on_star(star5):
    frame = tradeoff_table(star5, 1, 1, [1, 5], replicas=10)
    assert frame['U_kMaxVD'].tolist() == [1, 1]


def test_hamsterster_gap(dataset):
    graph = dataset('hamsterster')
    frame = gap_table(graph, [20], backend='highs')
    assert frame.loc[0, 'M_LP'] == pytest.approx(443.0, abs=0.5)
    assert frame.loc[0, 'M_MILP'] == pytest.approx(443.0, abs=0.5)


# Benchmark-scale sweeps

@pytest.fixture
def highs(settings):
    settings.INFLUENCE_BLOCKING = {**settings.INFLUENCE_BLOCKING, 'SOLVER_BACKEND': 'highs'}


@pytest.mark.slow
def test_def_milp_against_constraint_generation_by_size(highs):
    frame = cg_compare_table([15, 25, 35], 25, gaps=(0,), k_D=5, k_A=5, p=0.1, seed=0, backend='highs')
    assert frame['utility'].notna().all()
    summary = frame.groupby(['n', 'method']).agg(utility=('utility', 'mean'), seconds=('seconds', 'median'))
    for n in (15, 25, 35):
        milp, cg = summary.loc[(n, 'def-milp')], summary.loc[(n, 'cg')]
        assert milp['utility'] <= 1.1 * cg['utility']
        assert milp['seconds'] < cg['seconds']


@pytest.mark.slow
def test_integrality_gap_on_er100():
    frames = [gap_table(gen_er(100, 0.05, seed=seed), [5, 10], backend='highs') for seed in range(10)]
    frame = pd.concat(frames, ignore_index=True)
    assert (frame['gap_permille'] >= 0).all()
    assert frame['gap_permille'].median() <= 50


@pytest.mark.slow
def test_def_milp_beats_baselines_on_sixty_four_node_suite(highs):
    config = load_config({
        'graphs': [
            {'id': 'er64', 'model': 'er', 'n': 64, 'p': 0.1, 'instances': 10},
            {'id': 'ws64', 'model': 'ws', 'n': 64, 'k': 5, 'beta': 0.15, 'instances': 10},
            {'id': 'ba64', 'model': 'ba', 'n': 64, 'm': 3, 'instances': 10},
        ],
        'defenses': [{'name': name} for name in ('def-milp', 'degree', 'betweenness', 'pagerank', 'wdom', 'random')],
        'attacks': ['kmaxvd'],
        'k_D': [2, 4, 6, 8, 10],
        'k_A': [5],
        'seed': 0,
    })
    records = run_experiment(config, workers=1)
    assert not any(record.failed for record in records)
    means = records_frame(records).groupby(['k_D', 'defense'])['utility'].mean().unstack('defense')
    for baseline in ('degree', 'betweenness', 'pagerank', 'wdom', 'random'):
        assert (means['def-milp'] <= means[baseline] + 1e-9).all(), baseline


# REST API

@pytest.fixture
def client():
    return APIClient()


def test_defend_endpoint(client, star5):
    response = client.post('/api/defend/', {
        'graph': graph_to_document(star5), 'method': 'def-milp', 'k_D': 1, 'k_A': 1,
    }, format='json')
    assert response.status_code == 200
    assert response.json()['blocked_nodes'] == [0]


def test_defend_endpoint_errors(client, star5):
    response = client.post('/api/defend/', {'graph': graph_to_document(star5), 'k_D': 9, 'k_A': 1}, format='json')
    assert response.status_code == 400
    assert 'error' in response.json()
    response = client.post('/api/defend/', {'k_A': 1}, format='json')
    assert response.status_code == 400
    assert 'graph' in response.json()['error']


def test_attack_endpoint(client, star5):
    response = client.post('/api/attack/', {
        'graph': graph_to_document(star5), 'blocked': [0], 'k_A': 2,
    }, format='json')
    assert response.status_code == 200
    assert response.json()['value'] == 2


def test_evaluate_endpoint(client, star5):
    response = client.post('/api/evaluate/', {
        'graph': graph_to_document(star5), 'seeds': [0], 'p': 1.0, 'replicas': 10,
    }, format='json')
    assert response.status_code == 200
    assert response.json() == {'mean': 5.0, 'stderr': 0.0, 'replicas': 10}
    response = client.post('/api/evaluate/', {
        'graph': graph_to_document(star5), 'seeds': [0], 'blocked': [0],
    }, format='json')
    assert response.status_code == 400
