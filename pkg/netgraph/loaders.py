import logging
from dataclasses import dataclass
from pathlib import Path

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import GraphParseError, ParameterError

from .graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeListReport:
    lines: int
    dropped_duplicates: int
    dropped_self_loops: int


@dataclass(frozen=True)
class Dataset:
    name: str
    filename: str
    directed: bool
    n: int
    m: int


# Real-world networks are fetched by the user into DATASET_DIR.
DATASETS = {
    'email-eu-core': Dataset('email-eu-core', 'email-Eu-core.txt', True, 1005, 25571),
    'hamsterster': Dataset('hamsterster', 'out.petster-friendships-hamster-uniq', False, 1858, 12534),
}


def load_edge_list(stream, directed=False, weights=None):
    """Parse ``u v`` lines into a ``Graph``.

    ``#`` starts a comment anywhere on a line and lines starting with ``%``
    (KONECT headers) are skipped; columns after the second are ignored.
    Labels get dense indices in order of first appearance.  Self-loops and
    duplicate edges are dropped and counted in the returned report.
    ``weights`` maps labels to node weights; missing labels default to 1.
    """
    index = {}
    edges = []
    seen = set()
    duplicates = self_loops = lines = 0
    for line_number, raw in enumerate(stream, start=1):
        lines += 1
        line = raw.split('#', 1)[0].strip()
        if not line or line.startswith('%'):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise GraphParseError(f'expected "u v", got {raw.strip()!r}', line_number)
        u, v = (index.setdefault(token, len(index)) for token in tokens[:2])
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)

    labels = list(index)
    node_weights = None
    if weights is not None:
        try:
            node_weights = [float(weights.get(label, 1.0)) for label in labels]
        except (TypeError, ValueError) as exc:
            raise ParameterError(f'invalid weight table: {exc}') from exc
    graph = Graph.from_edges(len(labels), edges, directed=directed, weights=node_weights, labels=labels)
    report = EdgeListReport(lines, duplicates, self_loops)
    if duplicates or self_loops:
        logger.info('dropped %d duplicate edges and %d self-loops', duplicates, self_loops)
    return graph, report


def write_edge_list(graph, stream):
    kind = 'directed' if graph.directed else 'undirected'
    stream.write(f'# {kind} n={graph.n} m={graph.m}\n')
    for u, v in graph.edges():
        stream.write(f'{graph.labels[u]} {graph.labels[v]}\n')


def load_dataset(name, path=None):
    """Load a manifest dataset and verify its node and edge counts."""
    try:
        dataset = DATASETS[name]
    except KeyError:
        raise ParameterError(f'unknown dataset {name!r}; known: {sorted(DATASETS)}') from None
    path = Path(path) if path else Path(app_setting('DATASET_DIR')) / dataset.filename
    if not path.exists():
        raise ParameterError(f'dataset file {path} not found; fetch {name} first')
    with path.open() as stream:
        graph, _ = load_edge_list(stream, directed=dataset.directed)
    if (graph.n, graph.m) != (dataset.n, dataset.m):
        raise ParameterError(
            f'{name}: expected n={dataset.n}, m={dataset.m}, loaded n={graph.n}, m={graph.m}'
        )
    return graph
