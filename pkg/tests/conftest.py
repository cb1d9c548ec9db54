import pytest

from pcsf.core import PcsfInstance


@pytest.fixture
def single_edge_cheap():
    """Two vertices, edge 10, pair worth 100: connecting wins."""
    return PcsfInstance(2, [(0, 1, 10)], {(0, 1): 100})


@pytest.fixture
def single_edge_pricey():
    """Two vertices, edge 10, pair worth 4: paying wins."""
    return PcsfInstance(2, [(0, 1, 10)], {(0, 1): 4})


@pytest.fixture
def path_uwv():
    """u=0, v=1, w=2; path u-w-v with unit edges, pair (u, v) worth 3/2."""
    return PcsfInstance(3, [(0, 2, 1), (2, 1, 1)], {(0, 1): "3/2"})
