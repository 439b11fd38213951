"""
Exhaustive sweeps over every Le-diagram up to n = 8, fanned out over a process
pool by chunks of diagrams. Run with `pytest -m slow`.
"""
import random

import pytest

from cell_locator import anchor_sets, locate, mprime_via_paths
from combinatorics import enumerate_le_diagrams, random_tableau
from gamma_graph import MobiusMethod, build_graph, build_network, face_poset, mobius
from inversion import (
    anchor_monomial,
    anchors_of,
    coords_minimal,
    coords_mobius,
    corners,
    face_boundaries,
    laurent_expand,
    nest_weight,
)
from matrix_io import plucker_from_matrix
from measurement import boundary_matrix, matroid_of, measure, measure_det
from parallel import run_tasks

pytestmark = pytest.mark.slow

SMALL = [(k, n) for n in range(1, 7) for k in range(1, n)]
FULL = [(k, n) for n in range(1, 9) for k in range(1, n)]
CHUNK = 200


def _roundtrip_chunk(task):
    seed, diagrams = task
    rng = random.Random(seed)
    failures = []
    for diagram in diagrams:
        graph = build_graph(diagram)
        bases = matroid_of(diagram, graph=graph)
        for _ in range(5):
            tableau = random_tableau(diagram, rng, 100)
            vector = measure(tableau, subsets=bases, graph=graph)
            if (
                locate(vector) != diagram
                or coords_mobius(vector, diagram, check=False, graph=graph) != tableau
                or coords_minimal(vector, diagram, check=False, graph=graph) != tableau
            ):
                failures.append(tableau)
    return failures


def _oracle_chunk(task):
    seed, diagrams = task
    rng = random.Random(seed)
    failures = []
    for diagram in diagrams:
        graph = build_graph(diagram)
        tableau = random_tableau(diagram, rng)
        if measure(tableau, graph=graph) != measure_det(tableau):
            failures.append((diagram, "measure_det"))
        poset = face_poset(graph)
        if mobius(poset, MobiusMethod.CLOSED_FORM) != mobius(poset, MobiusMethod.RECURSIVE):
            failures.append((diagram, "mobius"))
        bases = matroid_of(diagram, graph=graph)
        for box in diagram.shape.boxes():
            anchor = anchor_sets(bases, box, diagram.n)
            if mprime_via_paths(graph, box) != anchor.m_prime or (anchor.m in bases) != (box in diagram.plus):
                failures.append((diagram, tuple(box)))
    return failures


def _sweep(worker, k, n, seed):
    diagrams = list(enumerate_le_diagrams(k, n))
    tasks = [(seed + i, diagrams[i:i + CHUNK]) for i in range(0, len(diagrams), CHUNK)]
    return [failure for chunk in run_tasks(worker, tasks, use_multiprocessing=True) for failure in chunk]


@pytest.mark.parametrize("k, n", FULL)
def test_roundtrip_sweep(k, n):
    assert _sweep(_roundtrip_chunk, k, n, 1000 * n + k) == []


@pytest.mark.parametrize("k, n", FULL)
def test_oracle_sweep(k, n):
    assert _sweep(_oracle_chunk, k, n, 100 * n - k) == []


@pytest.mark.parametrize("k, n", [(k, n) for n in range(1, 8) for k in range(1, n)])
def test_nest_identity_sweep(k, n):
    rng = random.Random(7 * n + k)
    for diagram in enumerate_le_diagrams(k, n):
        tableau = random_tableau(diagram, rng)
        network = build_network(tableau)
        graph = network.graph
        vector = measure(tableau)
        anchors = anchors_of(graph)
        for face in graph.faces:
            bounds = face_boundaries(graph, face)
            for path in (bounds.U, bounds.D, bounds.U_prime, bounds.D_prime):
                assert nest_weight(network, path) == anchor_monomial(vector, anchors, corners(path)[2])


@pytest.mark.parametrize("k, n", SMALL)
def test_laurent_positivity_sweep(k, n):
    rng = random.Random(n * n + k)
    for diagram in enumerate_le_diagrams(k, n):
        vectors = [measure(random_tableau(diagram, rng)) for _ in range(3)]
        for subset in matroid_of(diagram):
            polynomial = laurent_expand(diagram, subset)
            assert all(isinstance(coef, int) and coef > 0 for coef, _ in polynomial.terms)
            for vector in vectors:
                assert polynomial.evaluate(vector) == vector[subset]


def test_matrix_pipeline():
    rng = random.Random(8)
    diagrams = [d for n in range(2, 8) for k in range(1, n) for d in enumerate_le_diagrams(k, n) if d.dimension]
    for diagram in rng.sample(diagrams, 100):
        tableau = random_tableau(diagram, rng)
        expected = measure(tableau)
        vector = plucker_from_matrix(boundary_matrix(build_network(tableau)))
        assert vector == expected
        located = locate(vector)
        assert measure(coords_minimal(vector, located)) == expected


@pytest.mark.parametrize("k", range(0, 7))
def test_matroids_are_distinct_for_n6(k):
    seen = set()
    for diagram in enumerate_le_diagrams(k, 6):
        bases = matroid_of(diagram)
        assert bases not in seen
        seen.add(bases)
