"""Graph files and graph sources for commands and experiment configs.

A graph file is either a JSON graph document (``.json``) or a plain edge
list; ``dataset:<name>`` loads a manifest dataset from DATASET_DIR.
"""
import json
import logging
from pathlib import Path

from influence_blocking.exceptions import ParameterError
from netgraph.generators import forest_fire_sample, gen_ba, gen_er, gen_ws
from netgraph.loaders import load_dataset, load_edge_list, write_edge_list
from netgraph.rng import derive_seed
from netgraph.serializers import graph_from_document, graph_to_document

logger = logging.getLogger(__name__)

GRAPH_MODELS = ('er', 'ws', 'ba', 'file', 'dataset')


def read_graph(path, directed=False):
    path = str(path)
    if path.startswith('dataset:'):
        return load_dataset(path.split(':', 1)[1])
    path = Path(path)
    if not path.exists():
        raise ParameterError(f'graph file {path} does not exist')
    with path.open() as stream:
        if path.suffix == '.json':
            return graph_from_document(json.load(stream))
        graph, report = load_edge_list(stream, directed=directed)
    logger.info('loaded %s: %r (%s)', path, graph, report)
    return graph


def write_graph(graph, stem):
    """Write ``<stem>.json`` and ``<stem>.txt``; returns both paths."""
    stem = Path(stem)
    if stem.suffix in ('.json', '.txt'):
        stem = stem.with_suffix('')
    stem.parent.mkdir(parents=True, exist_ok=True)
    document_path, edges_path = stem.with_suffix('.json'), stem.with_suffix('.txt')
    with document_path.open('w') as stream:
        json.dump(graph_to_document(graph), stream)
    with edges_path.open('w') as stream:
        write_edge_list(graph, stream)
    return document_path, edges_path


def generate(model, n, seed=0, p=0.1, k=5, beta=0.15, m=3):
    if model == 'er':
        return gen_er(n, p, seed=seed)
    if model == 'ws':
        return gen_ws(n, k, beta, seed=seed)
    if model == 'ba':
        return gen_ba(n, m, seed=seed)
    raise ParameterError(f'unknown generator {model!r}; expected er, ws or ba')


def build_graph(source, master_seed, instance=0):
    """Instance ``instance`` of a config graph source.

    Generated graphs take their seed from ``(master_seed, 'graph', id,
    instance)``; file and dataset sources ignore ``instance`` unless
    ``sample_n`` asks for a Forest Fire sample.
    """
    seed = derive_seed(master_seed, 'graph', source['id'], instance)
    model = source['model']
    if model in ('er', 'ws', 'ba'):
        options = {key: source[key] for key in ('p', 'k', 'beta', 'm') if key in source}
        graph = generate(model, source['n'], seed=seed, **options)
    elif model == 'file':
        graph = read_graph(source['path'], directed=source.get('directed', False))
    elif model == 'dataset':
        graph = load_dataset(source['name'])
    else:
        raise ParameterError(f'unknown graph source {model!r}; expected one of {GRAPH_MODELS}')
    if source.get('sample_n'):
        graph = forest_fire_sample(graph, source['sample_n'], seed=seed)
    return graph
