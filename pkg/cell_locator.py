"""
Locate the positroid cell of a point from its Plücker vector.

For every box B = (r, c) of the shape of the support, the anchor subsets
M'(B) (lex-maximal in the support among subsets agreeing with I outside the
interval (i_r, j_c)) and M(B) = M'(B) - i_r + j_c decide the Le-diagram entry:
B is PLUS iff P_{M(B)} is nonzero.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable

from combinatorics import BoxCoord, Entry, LeDiagram, Subset, shape_from_base, validate_le_diagram
from errors import InvariantError, MathInputError, NotInCellError, SchemaError
from gamma_graph import GammaGraph
from matrix_io import PluckerVector
from measurement import matroid_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CellAnchor:
    box: BoxCoord
    window: Subset
    m_prime: Subset
    m: Subset


def anchor_window(boundary, box, n: int) -> Subset:
    """[n] with the open interval (i_r, j_c) removed."""
    low, high = boundary.source(box[0]), boundary.sink(box[1])
    return tuple(x for x in range(1, n + 1) if not low < x < high)


def anchor_sets(matroid: Iterable, box, n: int) -> CellAnchor:
    """
    Anchor subsets of a box for a set of bases.

    Args:
        matroid: Nonempty collection of k-subsets (the support M).
        box: A box of the shape lambda(M).
        n: Ground set size.

    Returns:
        CellAnchor: window, M'(B, M) and M(B, M).

    Raises:
        InvariantError: If no subset of M agrees with I on the window.
    """
    subsets = sorted(tuple(sorted(J)) for J in matroid)
    if not subsets:
        raise MathInputError("Empty support has no anchor sets", code="all_zero")
    base = subsets[0]
    shape = shape_from_base(base, len(base), n)
    box = BoxCoord(*box)
    if box not in shape:
        raise SchemaError(f"Box {tuple(box)} is not in the shape {list(shape.rows)}")
    return _anchor(subsets, shape.boundary, box, n)


def _anchor(subsets, boundary, box: BoxCoord, n: int) -> CellAnchor:
    window = anchor_window(boundary, box, n)
    outside = set(window)
    fixed = set(boundary.base) & outside
    candidates = [J for J in subsets if set(J) & outside == fixed]
    if not candidates:
        raise InvariantError(f"No basis agrees with I={list(boundary.base)} on the window of {tuple(box)}")
    m_prime = max(candidates)
    source, sink = boundary.source(box.row), boundary.sink(box.col)
    m = tuple(sorted((set(m_prime) - {source}) | {sink}))
    return CellAnchor(box, window, m_prime, m)


def anchor_pattern(vector: PluckerVector) -> Dict[BoxCoord, bool]:
    """Whether P_{M(B)} is nonzero, for every box B of the shape of the support."""
    base = vector.base
    shape = shape_from_base(base, vector.k, vector.n)
    support = sorted(vector.support)
    pattern = {}
    for box in shape.boxes():
        anchor = _anchor(support, shape.boundary, box, vector.n)
        pattern[box] = bool(vector[anchor.m])
    return pattern


def locate(vector: PluckerVector, verify_support: bool = False) -> LeDiagram:
    """
    The Le-diagram of the positroid cell containing a point.

    Args:
        vector: Plücker vector of a point of the nonnegative Grassmannian.
        verify_support: Also compare the support with the path matroid of the
            result.

    Returns:
        LeDiagram: The filling has PLUS exactly where P_{M(B)} is nonzero.

    Raises:
        NotInCellError: If the filling breaks the Le-property, or (with
            verify_support) the support is not the matroid of the cell.
    """
    shape = shape_from_base(vector.base, vector.k, vector.n)
    pattern = anchor_pattern(vector)
    filling = {box: Entry.PLUS if plus else Entry.ZERO for box, plus in pattern.items()}
    logger.debug(f"Support of size {len(vector.support)} gives shape {list(shape.rows)}")
    if not validate_le_diagram(shape, filling):
        raise NotInCellError("Anchor pattern violates the Le-property; the point is not in the nonnegative Grassmannian")
    diagram = LeDiagram.from_filling(shape, filling)
    if verify_support:
        if matroid_of(diagram) != vector.support:
            raise NotInCellError("Support is not the matroid of the located cell")
    return diagram


def cell_of_support(support: Iterable, n: int) -> LeDiagram:
    """Locate from a support set alone."""
    subsets = sorted(tuple(sorted(J)) for J in support)
    if not subsets:
        raise MathInputError("Empty support", code="all_zero")
    return locate(PluckerVector(len(subsets[0]), n, {J: 1 for J in subsets}))


def mprime_via_paths(graph: GammaGraph, box) -> Subset:
    """
    M'(B) read off the northwest-most path collection strictly southeast of the B hook.

    The sources of rows below B whose labels lie before j_c are routed top to
    bottom. Each route starts at its source and prefers a free vertex to the
    west (staying east of column c) over stepping south; a source whose first
    vertex is taken or lies west of the hook keeps its trivial path.
    """
    box = BoxCoord(*box)
    shape = graph.shape
    if box not in shape:
        raise SchemaError(f"Box {tuple(box)} is not in the shape {list(shape.rows)}")
    boundary = graph.boundary
    sink_limit = boundary.sink(box.col)
    destinations = set(boundary.base)
    used = set()

    for row in range(box.row + 1, shape.k + 1):
        source = boundary.source(row)
        if source >= sink_limit:
            break
        cols = graph.row_plus[row]
        if not cols or cols[0] >= box.col or (row, cols[0]) in used:
            continue
        position = BoxCoord(row, cols[0])
        path = [position]
        while True:
            west = [c for c in graph.row_plus[position.row] if c > position.col]
            if west and west[0] < box.col and (position.row, west[0]) not in used:
                position = BoxCoord(position.row, west[0])
            else:
                south = [r for r in graph.col_plus[position.col] if r > position.row]
                if not south:
                    break
                position = BoxCoord(south[0], position.col)
                if position in used:
                    raise InvariantError(f"Greedy routing from {source} ran into a used vertex {tuple(position)}")
            path.append(position)
        sink = boundary.sink(position.col)
        if sink in destinations:
            raise InvariantError(f"Greedy routing sent two sources to sink {sink}")
        used.update(path)
        destinations.discard(source)
        destinations.add(sink)
    return tuple(sorted(destinations))
