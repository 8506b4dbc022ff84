import os
import sys
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ninner import InnerSpace  # noqa: E402

TRIPLE_X = (1, 0, 0)
TRIPLE_U = (1, 1, 1)
TRIPLE_V = (2, 1, 2)


@pytest.fixture
def space3():
    return InnerSpace.euclidean(3)


@pytest.fixture
def triple(space3):
    """The three vectors of the worked counterexample, as library vectors."""
    return tuple(space3.vector(v) for v in (TRIPLE_X, TRIPLE_U, TRIPLE_V))
