from pathlib import Path

import pytest

from influence_blocking.conf import app_setting
from netgraph.graph import Graph
from netgraph.loaders import DATASETS, load_dataset


@pytest.fixture
def star5():
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def path4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def tri():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def arc01():
    return Graph.from_edges(2, [(0, 1)], directed=True)


@pytest.fixture
def dataset():
    """Loader for manifest datasets; skips the test when the file has not been fetched."""
    def load(name):
        path = Path(app_setting('DATASET_DIR')) / DATASETS[name].filename
        if not path.exists():
            pytest.skip(f'{name} not available under {path.parent}')
        return load_dataset(name)
    return load
