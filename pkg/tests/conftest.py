import pytest

from gkzjump import gring as gr

ZERO_ONE_THREE_FOUR = [[1, 1, 1, 1], [0, 1, 3, 4]]
IDENTITY2 = [[1, 0], [0, 1]]
CONIC = [[1, 1, 1], [0, 1, 2]]


@pytest.fixture
def ring_0134():
    return gr.make_ring(ZERO_ONE_THREE_FOUR)


@pytest.fixture
def ring_identity():
    return gr.make_ring(IDENTITY2)


@pytest.fixture
def ring_conic():
    return gr.make_ring(CONIC)
