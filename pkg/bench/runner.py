"""Experiment sweeps: every graph instance against every defense, attack and budget.

A cell is ``(graph instance, defense, k_D, k_A)``; its defense runs once
and every attack is played against the resulting blocks.  Cells run in a
process pool when more than one worker is configured.  Attack streams
depend on ``(seed, graph, attack, k_A)`` only, so all defenses of a cell
family face the same random numbers, and results are independent of
scheduling.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from diffusion.specs import DiffusionSpec
from influence_blocking.conf import app_setting
from influence_blocking.exceptions import InfluenceBlockingError
from netgraph.rng import derive_seed, make_rng

from .graphs import build_graph
from .records import RunRecord
from .strategies import run_attack, run_defense

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cell:
    source: dict
    instance: int
    defense: dict
    k_D: int
    k_A: int

    @property
    def graph_id(self):
        return f"{self.source['id']}#{self.instance}"


def plan_cells(config):
    """Cells in a fixed order; with no defenses every graph gets an attack-only ``none`` cell."""
    defenses = config['defenses'] or [{'name': 'none'}]
    k_D_values = config['k_D'] if config['defenses'] else [0]
    cells = []
    for source in config['graphs']:
        for instance in range(source.get('instances', 1)):
            for defense in defenses:
                budgets = [0] if defense['name'] == 'none' else k_D_values
                for k_D in budgets:
                    for k_A in config['k_A']:
                        cells.append(Cell(source, instance, defense, k_D, k_A))
    return cells


def node_values(config, cell, graph):
    if not config.get('weighted'):
        return None
    rng = make_rng(config['seed'], 'weights', cell.source['id'], cell.instance)
    return rng.random(graph.n)


def run_cell(config, cell):
    """All attack records of one cell; failures are recorded, not raised."""
    master = config['seed']
    diffusion_config = config.get('diffusion', {})
    records = []
    try:
        graph = build_graph(cell.source, master, cell.instance)
        mu = node_values(config, cell, graph)
        options = {key: value for key, value in cell.defense.items() if key != 'name'}
        defense_seed = derive_seed(master, 'defense', cell.graph_id, cell.defense['name'], cell.k_D, cell.k_A)
        diffusion = DiffusionSpec(
            model=diffusion_config.get('model', 'uic'), p=diffusion_config.get('p', 0.1), seed=defense_seed,
        )
        start = time.perf_counter()
        defense = run_defense(cell.defense['name'], graph, cell.k_D, cell.k_A, mu, defense_seed, diffusion,
                              **options)
        defense_seconds = time.perf_counter() - start
    except InfluenceBlockingError as error:
        logger.error('cell %s %s k_D=%d failed: %s', cell.graph_id, cell.defense['name'], cell.k_D, error)
        return [
            RunRecord(cell.graph_id, cell.defense['name'], attack, cell.k_D, cell.k_A, error=str(error))
            for attack in config['attacks']
        ]

    for attack in config['attacks']:
        attack_seed = derive_seed(master, 'attack', cell.graph_id, attack, cell.k_A)
        record = RunRecord(
            cell.graph_id, defense.method or cell.defense['name'], attack, cell.k_D, cell.k_A,
            bound=defense.bound, seed=attack_seed, blocked=defense.blocked.sorted(),
        )
        try:
            start = time.perf_counter()
            report = run_attack(
                attack, defense.attacked_graph(graph), defense.blocked, cell.k_A, mu, attack_seed,
                diffusion.derive(seed=attack_seed),
                greedy_replicas=config.get('greedy_replicas'),
                eval_replicas=config.get('eval_replicas'),
            )
            record.utility, record.stderr = report.utility, report.stderr
            record.seeds = report.outcome.seeds.sorted()
            record.seconds = defense_seconds + time.perf_counter() - start
        except InfluenceBlockingError as error:
            logger.error('cell %s %s/%s failed: %s', cell.graph_id, record.defense, attack, error)
            record.error = str(error)
        records.append(record)
    return records


def _run_cell_args(args):
    return run_cell(*args)


def run_experiment(config, workers=None):
    """Run every cell and return the records in cell order."""
    workers = app_setting('BENCH_WORKERS') if workers is None else workers
    cells = plan_cells(config)
    logger.info('experiment: %d cells on %d worker(s)', len(cells), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_cell_args, [(config, cell) for cell in cells]))
    else:
        batches = [run_cell(config, cell) for cell in cells]
    records = [record for batch in batches for record in batch]
    failed = sum(record.failed for record in records)
    if failed:
        logger.warning('%d of %d records failed', failed, len(records))
    return records
