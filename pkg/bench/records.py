import math
from dataclasses import asdict, dataclass, field

import pandas as pd

from influence_blocking.exceptions import ParameterError

RESULT_COLUMNS = ['graph', 'defense', 'attack', 'k_D', 'k_A', 'utility', 'stderr', 'bound', 'seconds', 'seed']


@dataclass
class RunRecord:
    """One (defense, attack, budgets) cell of a sweep.

    Failed cells keep their identifying columns and leave ``utility`` empty;
    the reason sits in ``error``, which is not part of the results table.
    """

    graph: str
    defense: str
    attack: str
    k_D: int
    k_A: int
    utility: float = math.nan
    stderr: float = math.nan
    bound: float = None
    seconds: float = 0.0
    seed: int = 0
    blocked: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    error: str = ''

    def __post_init__(self):
        if not self.error and (self.utility < -1e-9 or self.stderr < 0):
            raise ParameterError(f'invalid utility {self.utility} +- {self.stderr}')

    @property
    def failed(self):
        return bool(self.error)


def records_frame(records):
    frame = pd.DataFrame([asdict(record) for record in records], columns=RESULT_COLUMNS)
    frame['seed'] = frame['seed'].astype('uint64')
    return frame


def summary_frame(frame):
    """Mean utility per (defense, attack, k_D, k_A), with its spread across graphs."""
    grouped = frame.groupby(['defense', 'attack', 'k_D', 'k_A'], sort=True)['utility']
    summary = grouped.agg(['mean', 'std', 'count']).reset_index()
    return summary.rename(columns={'mean': 'utility_mean', 'std': 'utility_std', 'count': 'cells'})


def write_results(records, path):
    """Write the results CSV and ``<stem>_summary.csv`` next to it; returns both frames."""
    frame = records_frame(records)
    summary = summary_frame(frame)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format='%.10g')
    summary.to_csv(path.with_name(f'{path.stem}_summary.csv'), index=False, float_format='%.10g')
    return frame, summary
