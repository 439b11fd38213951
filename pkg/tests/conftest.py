import os
import random
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from combinatorics import LeDiagram, LeTableau, Partition  # noqa: E402
from gamma_graph import build_graph  # noqa: E402

SAMPLE_ROWS = (7, 7, 7, 6, 4)
SAMPLE_PLUS = [
    (1, 7), (2, 4), (3, 6), (3, 4), (3, 3), (3, 1), (4, 5),
    (4, 4), (4, 3), (5, 7), (5, 6), (5, 5), (5, 4),
]
# Top cell of Gr(2,4) with T11=2, T12=3, T21=5, T22=7; hand-computed measurements.
TOP24_VALUES = {(1, 1): 2, (1, 2): 3, (2, 1): 5, (2, 2): 7}
TOP24_COORDS = {
    (1, 2): Fraction(1),
    (1, 3): Fraction(5),
    (1, 4): Fraction(35),
    (2, 3): Fraction(10),
    (2, 4): Fraction(280),
    (3, 4): Fraction(1050),
}


@pytest.fixture
def sample_diagram():
    return LeDiagram(Partition(SAMPLE_ROWS, 5, 12), frozenset(SAMPLE_PLUS))


@pytest.fixture
def sample_graph(sample_diagram):
    return build_graph(sample_diagram)


@pytest.fixture
def top24_diagram():
    return LeDiagram(Partition((2, 2), 2, 4), frozenset(TOP24_VALUES))


@pytest.fixture
def top24_tableau(top24_diagram):
    return LeTableau.from_plus(top24_diagram, {box: Fraction(v) for box, v in TOP24_VALUES.items()})


@pytest.fixture
def rng():
    return random.Random(20240611)
