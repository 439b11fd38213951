"""
Gamma-graphs and Gamma-networks of Le-diagrams.

Every PLUS box B = (r, c) draws a hook: a horizontal segment from the source at
the east end of row r westward to B, and a vertical segment from B southward to
the sink at the bottom of column c. Hooks meet only at PLUS boxes, so the
network has one internal vertex per PLUS box. Faces are identified by their
northwest corner, the PLUS box whose hook bounds them from the northwest.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Dict, Iterable, Mapping, Optional, Tuple

import networkx as nx

from combinatorics import BoxCoord, LeDiagram, LeTableau, Partition, Subset, reading_key
from errors import InvariantError, SchemaError

logger = logging.getLogger(__name__)


class MobiusMethod(Enum):
    CLOSED_FORM = "closed_form"
    RECURSIVE = "recursive"


@dataclass(frozen=True)
class Face:
    corner: BoxCoord
    member_boxes: frozenset


def under_hook(box, corner) -> bool:
    """True iff box lies in H(corner): weakly below and weakly to the right."""
    return box[0] >= corner[0] and box[1] <= corner[1]


def hook_leq(first, second) -> bool:
    """The face order: the first hook lies weakly northwest of the second."""
    return first[0] <= second[0] and first[1] >= second[1]


def minimal_boxes(boxes: Iterable) -> Tuple[BoxCoord, ...]:
    """
    The hook-order minimal elements of a set of boxes.

    Minimal boxes form an antichain, so sorting by row also sorts by column
    (both increase from northeast to southwest).
    """
    boxes = set(boxes)
    minimal = [b for b in boxes if not any(o != b and hook_leq(o, b) for o in boxes)]
    return tuple(BoxCoord(*b) for b in sorted(minimal))


def inner_corners(shape: Partition, outer: Tuple[BoxCoord, ...]) -> Tuple[BoxCoord, ...]:
    """Boxes (r_{t+1}, c_t) where consecutive outer hooks meet inside the shape."""
    return tuple(
        BoxCoord(nxt.row, cur.col)
        for cur, nxt in zip(outer, outer[1:])
        if (nxt.row, cur.col) in shape
    )


@dataclass(frozen=True, eq=False)
class GammaGraph:
    diagram: LeDiagram
    sources: Subset
    sinks: Subset
    hooks: frozenset
    hook_cover: Mapping
    faces: Tuple[Face, ...]
    boundary_region: frozenset
    network: nx.DiGraph

    @property
    def shape(self) -> Partition:
        return self.diagram.shape

    @property
    def boundary(self):
        return self.diagram.boundary

    @cached_property
    def row_plus(self) -> Dict[int, Tuple[int, ...]]:
        """Columns of the PLUS boxes in each row, east to west."""
        rows = {row: [] for row in range(1, self.shape.k + 1)}
        for box in self.hooks:
            rows[box.row].append(box.col)
        return {row: tuple(sorted(cols)) for row, cols in rows.items()}

    @cached_property
    def col_plus(self) -> Dict[int, Tuple[int, ...]]:
        """Rows of the PLUS boxes in each column, north to south."""
        cols = {col: [] for col in range(1, self.shape.width + 1)}
        for box in self.hooks:
            cols[box.col].append(box.row)
        return {col: tuple(sorted(rows)) for col, rows in cols.items()}

    @cached_property
    def face_of(self) -> Dict[BoxCoord, Optional[BoxCoord]]:
        """Corner of the face containing each box; None for the boundary face."""
        owner = {box: None for box in self.boundary_region}
        for face in self.faces:
            for box in face.member_boxes:
                owner[box] = face.corner
        return owner

    def face(self, corner) -> Face:
        for face in self.faces:
            if face.corner == corner:
                return face
        raise SchemaError(f"{tuple(corner)} is not a face corner")

    def southeast_plus(self, corner) -> frozenset:
        """PLUS boxes under the hook of corner, corner included."""
        return frozenset(b for b in self.hooks if under_hook(b, corner))


@dataclass(frozen=True, eq=False)
class GammaNetwork:
    graph: GammaGraph
    face_weights: Mapping
    boundary_face_weight: Fraction

    def weight(self, face) -> Fraction:
        corner = face.corner if isinstance(face, Face) else BoxCoord(*face)
        return self.face_weights[corner]


@dataclass(frozen=True, eq=False)
class FacePoset:
    shape: Partition
    elements: Tuple[BoxCoord, ...]
    order: nx.DiGraph
    covers: Tuple[Tuple[BoxCoord, BoxCoord], ...]

    def leq(self, first, second) -> bool:
        return first == second or self.order.has_edge(first, second)


def build_graph(diagram: LeDiagram) -> GammaGraph:
    """
    Build the Gamma-graph of a Le-diagram.

    Row r carries edges i_r -> v(r, c1) -> v(r, c2) -> ... over its PLUS
    boxes westward; column c carries v(r1, c) -> v(r2, c) -> ... -> j_c over its
    PLUS boxes southward.

    Args:
        diagram: A valid Le-diagram.

    Returns:
        GammaGraph: network, hook covers and face regions.
    """
    shape = diagram.shape
    boundary = diagram.boundary
    network = nx.DiGraph()
    for row, source in enumerate(boundary.sources, start=1):
        network.add_node(source, kind="source", row=row)
    for col, sink in enumerate(boundary.sinks, start=1):
        network.add_node(sink, kind="sink", col=col)
    for box in diagram.plus_boxes:
        network.add_node(box, kind="vertex")

    for row in range(1, shape.k + 1):
        chain = [boundary.source(row)]
        chain += [BoxCoord(row, col) for col in sorted(c for r, c in diagram.plus if r == row)]
        nx.add_path(network, chain)
    for col in range(1, shape.width + 1):
        chain = [BoxCoord(row, col) for row in sorted(r for r, c in diagram.plus if c == col)]
        chain.append(boundary.sink(col))
        nx.add_path(network, chain)

    boxes = shape.boxes()
    hook_cover = {
        corner: frozenset(b for b in boxes if under_hook(b, corner)) for corner in diagram.plus_boxes
    }
    faces, boundary_region = _face_regions(diagram)
    logger.debug(
        f"Gamma-graph of shape {list(shape.rows)}: {network.number_of_nodes()} vertices, "
        f"{network.number_of_edges()} edges, {len(faces)} faces"
    )
    return GammaGraph(
        diagram=diagram,
        sources=boundary.base,
        sinks=boundary.sinks,
        hooks=diagram.plus,
        hook_cover=hook_cover,
        faces=faces,
        boundary_region=boundary_region,
        network=network,
    )


def _face_regions(diagram: LeDiagram) -> Tuple[Tuple[Face, ...], frozenset]:
    # Two edge-adjacent boxes share a region unless a hook runs between them:
    # the row-r hook segment lies on the north edge of row r east of its last
    # PLUS box, and the column-c segment lies on the west edge of column c
    # south of its first PLUS box.
    shape = diagram.shape
    west_reach = {row: max((c for r, c in diagram.plus if r == row), default=0) for row in range(1, shape.k + 1)}
    north_reach = {
        col: min((r for r, c in diagram.plus if c == col), default=shape.k + 1)
        for col in range(1, shape.width + 1)
    }

    adjacency = nx.Graph()
    adjacency.add_nodes_from(shape.boxes())
    for box in shape.boxes():
        below = BoxCoord(box.row + 1, box.col)
        if below in shape and box.col > west_reach[below.row]:
            adjacency.add_edge(box, below)
        west = BoxCoord(box.row, box.col + 1)
        if west in shape and box.row < north_reach[box.col]:
            adjacency.add_edge(box, west)

    faces = []
    boundary_region = set()
    for component in nx.connected_components(adjacency):
        corners = [box for box in component if box in diagram.plus]
        if len(corners) > 1:
            raise InvariantError(f"Face region holds several PLUS boxes: {sorted(corners)}")
        if corners:
            faces.append(Face(corners[0], frozenset(component)))
            continue
        covered = [b for b in component if any(under_hook(b, p) for p in diagram.plus)]
        if covered:
            raise InvariantError(f"Boxes {sorted(covered)} lie under a hook but in no face")
        boundary_region |= component
    faces.sort(key=lambda face: reading_key(face.corner))
    return tuple(faces), frozenset(boundary_region)


def build_network(tableau: LeTableau, graph: GammaGraph = None) -> GammaNetwork:
    """
    Attach the tableau entries as face weights.

    The boundary face gets the reciprocal of the product of all other face
    weights, so that the product over every face is 1.
    """
    if graph is None:
        graph = build_graph(tableau.diagram)
    elif graph.diagram != tableau.diagram:
        raise SchemaError("Tableau does not fill the diagram of the given graph")
    face_weights = {face.corner: tableau[face.corner] for face in graph.faces}
    boundary_face_weight = 1 / prod(face_weights.values(), start=Fraction(1))
    return GammaNetwork(graph, face_weights, boundary_face_weight)


def hook_weight(network: GammaNetwork, box) -> Fraction:
    """Product of the weights of all faces under the hook of a PLUS box."""
    corner = BoxCoord(*box)
    if corner not in network.graph.hooks:
        raise SchemaError(f"{tuple(corner)} is not a PLUS box")
    return prod(
        (network.face_weights[c] for c in network.graph.southeast_plus(corner)),
        start=Fraction(1),
    )


def face_poset(graph: GammaGraph) -> FacePoset:
    """
    The face poset: F1 <= F2 iff the F1 hook lies weakly northwest of the F2 hook.

    Returns:
        FacePoset: order holds an edge x -> y for every strict relation x < y;
        covers is its transitive reduction.
    """
    elements = tuple(face.corner for face in graph.faces)
    order = nx.DiGraph()
    order.add_nodes_from(elements)
    for first in elements:
        for second in elements:
            if first != second and hook_leq(first, second):
                order.add_edge(first, second)
    reduction = nx.transitive_reduction(order)
    covers = tuple(sorted(reduction.edges(), key=lambda e: (reading_key(e[0]), reading_key(e[1]))))
    return FacePoset(graph.shape, elements, order, covers)


def mobius(poset: FacePoset, method: MobiusMethod = MobiusMethod.CLOSED_FORM) -> Dict[tuple, int]:
    """
    Moebius function of the face poset on every ordered pair of faces.

    Args:
        poset: The face poset.
        method: CLOSED_FORM reads mu(F1, F2) off the corners of the southeast
            boundary of F1 (1 on inner corners, -1 on outer corners);
            RECURSIVE runs the defining recursion in topological order.

    Returns:
        dict: (corner1, corner2) -> mu, 0 for incomparable pairs.
    """
    if method is MobiusMethod.CLOSED_FORM:
        return _mobius_closed_form(poset)
    if method is MobiusMethod.RECURSIVE:
        return _mobius_recursive(poset)
    raise SchemaError(f"Unknown Moebius method: {method!r}")


def _mobius_closed_form(poset: FacePoset) -> Dict[tuple, int]:
    values = {}
    for first in poset.elements:
        outer = minimal_boxes(poset.order.successors(first))
        inner = set(inner_corners(poset.shape, outer))
        for second in poset.elements:
            if second == first or second in inner:
                values[(first, second)] = 1
            elif second in outer:
                values[(first, second)] = -1
            else:
                values[(first, second)] = 0
    return values


def _mobius_recursive(poset: FacePoset) -> Dict[tuple, int]:
    order = poset.order
    topo = list(nx.topological_sort(order))
    values = {(x, y): 0 for x in poset.elements for y in poset.elements}
    for x in poset.elements:
        values[(x, x)] = 1
        for y in topo:
            if not order.has_edge(x, y):
                continue
            # mu(x, y) = - sum of mu(x, z) over x <= z < y
            total = values[(x, x)]
            for z in order.successors(x):
                if z != y and order.has_edge(z, y):
                    total += values[(x, z)]
            values[(x, y)] = -total
    return values


def check_poset_axioms(poset: FacePoset) -> None:
    """
    Assert reflexivity, antisymmetry and transitivity of the face order.

    Raises:
        InvariantError: On the first violated axiom.
    """
    elements = poset.elements
    for x in elements:
        if not poset.leq(x, x):
            raise InvariantError(f"Face order is not reflexive at {tuple(x)}")
        for y in elements:
            if x != y and poset.leq(x, y) and poset.leq(y, x):
                raise InvariantError(f"Face order is not antisymmetric at {tuple(x)}, {tuple(y)}")
            if not poset.leq(x, y):
                continue
            for z in elements:
                if poset.leq(y, z) and not poset.leq(x, z):
                    raise InvariantError(f"Face order is not transitive at {tuple(x)}, {tuple(y)}, {tuple(z)}")
