"""Pytest configuration and fixtures for RDS tests."""

import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

# Make `RDS.src` importable when pytest is run from any directory
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from RDS.src.graph_core import complete_graph, cycle_graph, empty_graph, path_graph, read_edge_list  # noqa: E402
from RDS.src.joined_union import JoinedUnionPlan, complete_multipartite_plan  # noqa: E402

DATA_DIR = Path(__file__).parent.parent / "data"


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    shutil.rmtree(temp_path)


@pytest.fixture
def data_dir():
    """Directory holding the sample edge lists and plans."""
    return DATA_DIR


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def petersen():
    """Petersen graph read from the sample edge list."""
    return read_edge_list(DATA_DIR / "graphs" / "petersen.edges")


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def multipartite_plan():
    """K_{4,4,4} as K_3[3 x empty_4]."""
    return complete_multipartite_plan([4, 4, 4])


@pytest.fixture
def mixed_plan():
    """Path parent with a complete, an edgeless and a cycle component."""
    return JoinedUnionPlan(path_graph(3), (complete_graph(3), empty_graph(2), cycle_graph(5)))


@pytest.fixture
def rng():
    """Seeded generator so random plans are reproducible."""
    return np.random.default_rng(20240917)
