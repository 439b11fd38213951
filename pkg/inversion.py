"""
Recover Le-coordinates from Plücker coordinates.

Two formulas are implemented: a Moebius inversion over the face poset of
hook ratios P_{M(B)} / P_{M'(B)}, and a minimal one that reads only the
coordinates P_{M(B)} of the totally positive base through the corner signs of
four generalized paths per face. Generalized paths are stored as their outer
corners; inner corners are derived from consecutive outer corners.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, List, Mapping, Set, Tuple

from cell_locator import CellAnchor, anchor_window, locate, mprime_via_paths
from combinatorics import BoxCoord, LeDiagram, LeTableau, Subset, make_subset, reading_key
from errors import InvariantError, MathInputError, NotInCellError, SchemaError
from gamma_graph import (
    Face,
    GammaGraph,
    MobiusMethod,
    build_graph,
    face_poset,
    inner_corners,
    minimal_boxes,
    mobius,
    under_hook,
)
from matrix_io import PluckerVector
from measurement import PathFamily, family_weight, iter_families, measure
from parallel import run_tasks

logger = logging.getLogger(__name__)


class CoordsMethod(Enum):
    MOBIUS = "mobius"
    MINIMAL = "minimal"


@dataclass(frozen=True)
class GeneralizedPath:
    diagram: LeDiagram
    outer_corners: Tuple[BoxCoord, ...]

    def __post_init__(self):
        outer = tuple(BoxCoord(*box) for box in self.outer_corners)
        for box in outer:
            if box not in self.diagram.shape:
                raise SchemaError(f"Corner {tuple(box)} lies outside the shape")
        for first, second in zip(outer, outer[1:]):
            if not (first.row < second.row and first.col < second.col):
                raise SchemaError(
                    f"Outer corners must run northeast to southwest: {tuple(first)} then {tuple(second)}"
                )
        object.__setattr__(self, "outer_corners", outer)

    @property
    def inner_corners(self) -> Tuple[BoxCoord, ...]:
        return inner_corners(self.diagram.shape, self.outer_corners)

    @property
    def is_empty(self) -> bool:
        return not self.outer_corners

    def runs(self) -> List[Tuple[BoxCoord, ...]]:
        """Maximal stretches of outer corners joined by inner corners; one path each."""
        runs = []
        for box in self.outer_corners:
            if runs and (box.row, runs[-1][-1].col) in self.diagram.shape:
                runs[-1].append(box)
            else:
                runs.append([box])
        return [tuple(run) for run in runs]


@dataclass(frozen=True)
class FaceBoundaries:
    face: Face
    U: GeneralizedPath
    D: GeneralizedPath
    U_prime: GeneralizedPath
    D_prime: GeneralizedPath


@dataclass(frozen=True)
class LaurentPolynomial:
    base: Tuple[Subset, ...]
    terms: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def evaluate(self, values) -> Fraction:
        """Evaluate at base values given as a mapping subset -> rational (a PluckerVector works)."""
        point = [Fraction(values[J]) for J in self.base]
        if any(v == 0 for v, e in zip(point, self.exponents_in_use()) if e):
            raise MathInputError("Base coordinates must be nonzero to evaluate a Laurent polynomial")
        return sum(
            (coef * prod((v ** e for v, e in zip(point, exps) if e), start=Fraction(1)) for coef, exps in self.terms),
            Fraction(0),
        )

    def exponents_in_use(self) -> Tuple[int, ...]:
        return tuple(int(any(exps[i] for _, exps in self.terms)) for i in range(len(self.base)))


def corners(path: GeneralizedPath):
    """
    Outer corners, inner corners and the sign function of a generalized path.

    Returns:
        tuple: (outer, inner, eps) with eps(B) = 1 on outer corners, -1 on
        inner corners; boxes absent from eps have sign 0.

    Raises:
        MathInputError: If a corner is not a PLUS box of the diagram.
    """
    outer = path.outer_corners
    inner = path.inner_corners
    bad = [box for box in outer + inner if box not in path.diagram.plus]
    if bad:
        raise MathInputError(f"Corners {[tuple(b) for b in bad]} are not PLUS boxes", code="invalid_path")
    eps = {box: 1 for box in outer}
    eps.update({box: -1 for box in inner})
    return outer, inner, eps


def strictly_southeast(graph: GammaGraph, path: GeneralizedPath) -> GeneralizedPath:
    """The northwest-most generalized path strictly southeast of a generalized path."""
    below = [
        box for box in graph.hooks
        if any(box.row > o.row and box.col < o.col for o in path.outer_corners)
    ]
    return GeneralizedPath(graph.diagram, minimal_boxes(below))


def face_boundaries(graph: GammaGraph, face: Face) -> FaceBoundaries:
    """The hook U of a face, its southeast border D, and their primed paths."""
    corner = face.corner
    upper = GeneralizedPath(graph.diagram, (corner,))
    lower = GeneralizedPath(
        graph.diagram,
        minimal_boxes(box for box in graph.hooks if box != corner and under_hook(box, corner)),
    )
    return FaceBoundaries(
        face=face,
        U=upper,
        D=lower,
        U_prime=strictly_southeast(graph, upper),
        D_prime=strictly_southeast(graph, lower),
    )


def _run_nodes(graph: GammaGraph, run: Tuple[BoxCoord, ...]) -> tuple:
    boundary = graph.boundary
    first = run[0]
    nodes = [boundary.source(first.row)]
    nodes += [BoxCoord(first.row, c) for c in graph.row_plus[first.row] if c <= first.col]
    for current, following in zip(run, run[1:]):
        nodes += [BoxCoord(r, current.col) for r in graph.col_plus[current.col] if current.row < r <= following.row]
        nodes += [BoxCoord(following.row, c) for c in graph.row_plus[following.row] if current.col < c <= following.col]
    last = run[-1]
    nodes += [BoxCoord(r, last.col) for r in graph.col_plus[last.col] if r > last.row]
    nodes.append(boundary.sink(last.col))
    return tuple(nodes)


def nest_layers(graph: GammaGraph, path: GeneralizedPath) -> List[GeneralizedPath]:
    """W, W', W'', ... down to the last nonempty layer."""
    layers = []
    while not path.is_empty:
        corners(path)
        layers.append(path)
        path = strictly_southeast(graph, path)
    return layers


def nest(graph: GammaGraph, path: GeneralizedPath) -> PathFamily:
    """
    The northwest-most non-intersecting path family weakly southeast of a generalized path.

    Each layer contributes one route per run of its outer corners, hugging the
    hooks of that run; an empty path gives the empty family.
    """
    routes = {}
    for layer in nest_layers(graph, path):
        for run in layer.runs():
            nodes = _run_nodes(graph, run)
            if nodes[0] in routes:
                raise InvariantError(f"Two nest routes start at source {nodes[0]}")
            routes[nodes[0]] = nodes
    family = PathFamily(routes)
    seen = set()
    for nodes in routes.values():
        if seen & set(nodes):
            raise InvariantError("Nest routes intersect")
        seen.update(nodes)
    return family


def nest_weight(network, path: GeneralizedPath) -> Fraction:
    return family_weight(network, nest(network.graph, path))


@lru_cache(maxsize=64)
def anchors_of(graph: GammaGraph) -> Dict[BoxCoord, CellAnchor]:
    """Anchor subsets of every box, read off path collections of the graph."""
    boundary = graph.boundary
    anchors = {}
    for box in graph.shape.boxes():
        m_prime = mprime_via_paths(graph, box)
        m = tuple(sorted((set(m_prime) - {boundary.source(box.row)}) | {boundary.sink(box.col)}))
        anchors[box] = CellAnchor(box, anchor_window(boundary, box, graph.shape.n), m_prime, m)
    return anchors


def anchor_monomial(vector, anchors: Mapping, eps: Mapping) -> Fraction:
    """prod over C of P_{M(C)}^{eps(C)}."""
    value = Fraction(1)
    for box, exponent in eps.items():
        if not exponent:
            continue
        coordinate = vector[anchors[box].m]
        if not coordinate:
            raise NotInCellError(f"P_{list(anchors[box].m)} vanishes at PLUS box {tuple(box)}")
        value *= coordinate ** exponent
    return value


def tp_base(diagram: LeDiagram, graph: GammaGraph = None) -> List[Subset]:
    """The subsets M(B) over the PLUS boxes B in reading order."""
    anchors = anchors_of(graph or build_graph(diagram))
    return [anchors[box].m for box in diagram.plus_boxes]


def face_epsilon(graph: GammaGraph, face: Face) -> Dict[BoxCoord, int]:
    """eps(C) = [eps_U - eps_U'] - [eps_D - eps_D'] for one face, zeros dropped."""
    bounds = face_boundaries(graph, face)
    total = Counter()
    for path, sign in ((bounds.U, 1), (bounds.U_prime, -1), (bounds.D, -1), (bounds.D_prime, 1)):
        for box, value in corners(path)[2].items():
            total[box] += sign * value
    return {box: total[box] for box in sorted(total, key=reading_key) if total[box]}


def epsilon_ledger(diagram: LeDiagram, graph: GammaGraph = None) -> Dict[BoxCoord, Dict[BoxCoord, int]]:
    graph = graph or build_graph(diagram)
    return {face.corner: face_epsilon(graph, face) for face in graph.faces}


def hook_ratios(vector: PluckerVector, diagram: LeDiagram, graph: GammaGraph = None) -> Dict[BoxCoord, Fraction]:
    """P_{M(B)} / P_{M'(B)} for every PLUS box B."""
    anchors = anchors_of(graph or build_graph(diagram))
    ratios = {}
    for box in diagram.plus_boxes:
        denominator = vector[anchors[box].m_prime]
        if not denominator:
            raise NotInCellError(f"P_{list(anchors[box].m_prime)} vanishes at PLUS box {tuple(box)}")
        ratios[box] = vector[anchors[box].m] / denominator
    return ratios


class BaseView:
    """Read-only view of a Plücker vector that only answers for allowed subsets."""

    def __init__(self, vector: PluckerVector, allowed):
        self._vector = vector
        self._allowed = frozenset(tuple(J) for J in allowed)

    def __getitem__(self, subset) -> Fraction:
        subset = tuple(sorted(subset))
        if subset not in self._allowed:
            raise InvariantError(f"Read of P_{list(subset)} outside the totally positive base")
        return self._vector[subset]


def _check_cell(vector: PluckerVector, diagram: LeDiagram) -> None:
    if (vector.k, vector.n) != (diagram.k, diagram.n):
        raise SchemaError(f"Vector lives in Gr({vector.k},{vector.n}), diagram in Gr({diagram.k},{diagram.n})")
    located = locate(vector)
    if located != diagram:
        raise NotInCellError("The point does not lie in the cell of the given diagram")


def verify_coordinates(
    vector: PluckerVector,
    tableau: LeTableau,
    graph: GammaGraph = None,
    use_multiprocessing: bool = False,
    max_workers: int = None,
) -> None:
    """
    Measure recovered coordinates and compare with the point they came from.

    A point whose anchor pattern is a Le-diagram can still lie off the
    Grassmannian; its recovered tableau then measures to a different vector.

    Raises:
        NotInCellError: If measure(tableau) differs from the vector anywhere.
    """
    measured = measure(tableau, use_multiprocessing=use_multiprocessing, max_workers=max_workers, graph=graph)
    if measured == vector:
        return
    if (measured.k, measured.n) != (vector.k, vector.n):
        raise SchemaError(f"Vector lives in Gr({vector.k},{vector.n}), tableau in Gr({measured.k},{measured.n})")
    wrong = sorted(J for J in measured.support | vector.support if measured[J] != vector[J])
    logger.debug(f"Recovered coordinates miss the point at {len(wrong)} subsets")
    raise NotInCellError(
        f"The point is not in the nonnegative Grassmannian: recovered coordinates give "
        f"P_{list(wrong[0])} = {measured[wrong[0]]}, the point has {vector[wrong[0]]}"
    )


def coords_mobius(
    vector: PluckerVector,
    diagram: LeDiagram,
    method: MobiusMethod = MobiusMethod.CLOSED_FORM,
    check: bool = True,
    graph: GammaGraph = None,
) -> LeTableau:
    """
    Le-coordinates by Moebius inversion of hook ratios over the face poset.

    T_B = prod over PLUS C of (P_{M(C)} / P_{M'(C)})^{mu(B, C)}. With check,
    the point must locate to the diagram and the result must measure back to it.
    """
    if check:
        _check_cell(vector, diagram)
    graph = graph or build_graph(diagram)
    mu = mobius(face_poset(graph), method)
    ratios = hook_ratios(vector, diagram, graph)
    values = {}
    for box in diagram.plus_boxes:
        values[box] = prod(
            (ratios[c] ** mu[(box, c)] for c in diagram.plus_boxes if mu[(box, c)]),
            start=Fraction(1),
        )
    tableau = LeTableau.from_plus(diagram, values)
    if check:
        verify_coordinates(vector, tableau, graph)
    return tableau


def _minimal_entry(task) -> Tuple[BoxCoord, Fraction]:
    graph, view, anchors, face = task
    return face.corner, anchor_monomial(view, anchors, face_epsilon(graph, face))


def coords_minimal(
    vector: PluckerVector,
    diagram: LeDiagram,
    check: bool = True,
    use_multiprocessing: bool = False,
    max_workers: int = None,
    graph: GammaGraph = None,
) -> LeTableau:
    """
    Le-coordinates from the totally positive base alone.

    T_B = prod over PLUS C of P_{M(C)}^{eps(C)}; the formula reads the vector
    through a view restricted to the base subsets. The check reads the whole
    vector, as in coords_mobius.
    """
    if check:
        _check_cell(vector, diagram)
    graph = graph or build_graph(diagram)
    anchors = anchors_of(graph)
    view = BaseView(vector, [anchors[box].m for box in diagram.plus_boxes])
    tasks = [(graph, view, anchors, face) for face in graph.faces]
    values = dict(run_tasks(_minimal_entry, tasks, use_multiprocessing, max_workers))
    tableau = LeTableau.from_plus(diagram, values)
    if check:
        verify_coordinates(vector, tableau, graph, use_multiprocessing, max_workers)
    return tableau


def plucker_variables(diagram: LeDiagram, method: CoordsMethod, graph: GammaGraph = None) -> Set[Subset]:
    """The coordinates a recovery formula reads."""
    graph = graph or build_graph(diagram)
    anchors = anchors_of(graph)
    if method is CoordsMethod.MINIMAL:
        used = set()
        for face in graph.faces:
            used.update(anchors[box].m for box in face_epsilon(graph, face))
        return used
    mu = mobius(face_poset(graph))
    used = set()
    for (first, second), value in mu.items():
        if value:
            used.add(anchors[second].m)
            used.add(anchors[second].m_prime)
    return used


def laurent_expand(diagram: LeDiagram, subset) -> LaurentPolynomial:
    """
    P_J as a Laurent polynomial in the totally positive base.

    Every face weight is the monomial prod P_{M(C)}^{eps(C)}; each path family
    contributes the product of the monomials of the faces below its routes.

    Raises:
        MathInputError: If J is not reached by any path family.
    """
    graph = build_graph(diagram)
    subset = make_subset(subset, n=diagram.n, k=diagram.k)
    index = {box: i for i, box in enumerate(diagram.plus_boxes)}
    face_vector = {}
    for face in graph.faces:
        vector = [0] * len(index)
        for box, value in face_epsilon(graph, face).items():
            vector[index[box]] += value
        face_vector[face.corner] = vector

    terms = Counter()
    for family in iter_families(graph, subset):
        exps = [0] * len(index)
        for route in family:
            for corner in route.below:
                for i, value in enumerate(face_vector[corner]):
                    exps[i] += value
        terms[tuple(exps)] += 1
    if not terms:
        raise MathInputError(f"{list(subset)} is not in the matroid of the cell", code="not_in_matroid")
    base = tuple(tp_base(diagram, graph))
    logger.debug(f"P_{list(subset)} expands into {len(terms)} monomials over {len(base)} base coordinates")
    return LaurentPolynomial(base, tuple((coef, exps) for exps, coef in sorted(terms.items())))
