import pytest

from cell_locator import anchor_pattern, anchor_sets, anchor_window, cell_of_support, locate, mprime_via_paths
from combinatorics import BoxCoord, enumerate_le_diagrams, random_tableau
from errors import NotInCellError, SchemaError
from gamma_graph import build_graph
from matrix_io import PluckerVector, RationalMatrix, plucker_from_matrix
from measurement import matroid_of, measure


def test_sample_anchor(sample_diagram):
    anchor = anchor_sets(matroid_of(sample_diagram), (2, 6), 12)
    assert anchor.window == (1, 2, 11, 12)
    assert anchor.m_prime == (1, 2, 7, 9, 10)
    assert anchor.m == (1, 7, 9, 10, 11)


def test_sample_anchor_by_routing(sample_graph):
    assert mprime_via_paths(sample_graph, (2, 6)) == (1, 2, 7, 9, 10)


def test_anchor_window(sample_diagram):
    assert anchor_window(sample_diagram.boundary, BoxCoord(2, 6), 12) == (1, 2, 11, 12)


@pytest.mark.parametrize(
    "box, m_prime, m",
    [((1, 1), (1, 2), (2, 3)), ((2, 1), (1, 2), (1, 3)), ((2, 2), (1, 2), (1, 4)), ((1, 2), (1, 3), (3, 4))],
)
def test_top_cell_anchors(top24_diagram, box, m_prime, m):
    anchor = anchor_sets(matroid_of(top24_diagram), box, 4)
    assert anchor.m_prime == m_prime
    assert anchor.m == m


def test_anchor_outside_the_shape(top24_diagram):
    with pytest.raises(SchemaError):
        anchor_sets(matroid_of(top24_diagram), (3, 1), 4)


@pytest.mark.parametrize("k, n", [(1, 4), (2, 4), (2, 5), (3, 5), (3, 6)])
def test_anchor_pattern_is_the_diagram(k, n, rng):
    for diagram in enumerate_le_diagrams(k, n):
        vector = measure(random_tableau(diagram, rng))
        pattern = anchor_pattern(vector)
        assert {box for box, plus in pattern.items() if plus} == diagram.plus
        assert locate(vector, verify_support=True) == diagram


@pytest.mark.parametrize("k, n", [(2, 5), (3, 6)])
def test_routing_matches_lexmax_anchor(k, n):
    for diagram in enumerate_le_diagrams(k, n):
        graph = build_graph(diagram)
        bases = matroid_of(diagram)
        for box in diagram.shape.boxes():
            assert mprime_via_paths(graph, box) == anchor_sets(bases, box, n).m_prime


def test_cell_of_support(sample_diagram):
    assert cell_of_support(matroid_of(sample_diagram), 12) == sample_diagram


def test_totally_positive_point_is_in_the_top_cell():
    diagram = locate(plucker_from_matrix(RationalMatrix(((1, 1, 0), (0, 1, 1)))))
    assert diagram.shape.rows == (1, 1)
    assert diagram.plus == set(diagram.shape.boxes())


def test_coordinate_indicator_is_a_zero_dimensional_cell():
    diagram = locate(PluckerVector(2, 4, {(2, 4): 1}))
    assert diagram.shape.rows == (1, 0)
    assert diagram.dimension == 0


def test_le_violation_is_not_in_a_cell():
    vector = PluckerVector(2, 4, {(1, 2): 1, (2, 3): 1, (1, 4): 1})
    with pytest.raises(NotInCellError):
        locate(vector)


def test_verify_support_catches_a_missing_basis():
    vector = PluckerVector(2, 4, {(1, 2): 1, (1, 3): 1, (1, 4): 1, (2, 3): 1, (3, 4): 1})
    assert locate(vector).dimension == 4
    with pytest.raises(NotInCellError):
        locate(vector, verify_support=True)
