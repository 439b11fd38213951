"""
The boundary measurement map: non-intersecting path families in a Gamma-network,
their weights, the resulting Plücker vector, a determinant cross-check and the
path matroid of a diagram.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Dict, Iterator, List, Mapping, NamedTuple, Tuple

import networkx as nx

from combinatorics import LeDiagram, LeTableau, Subset, all_subsets, make_subset
from errors import InvariantError
from gamma_graph import GammaGraph, GammaNetwork, build_graph, build_network
from matrix_io import PluckerVector, RationalMatrix, maximal_minors, normalize_projective
from parallel import run_tasks

logger = logging.getLogger(__name__)


class Route(NamedTuple):
    """A directed path from a boundary source, with the PLUS boxes southeast of it."""

    source: int
    target: int
    nodes: tuple
    vertices: frozenset
    below: frozenset


@dataclass(frozen=True)
class PathFamily:
    routes: Mapping

    @property
    def destinations(self) -> Subset:
        return tuple(sorted(path[-1] for path in self.routes.values()))

    @property
    def vertices(self) -> frozenset:
        return frozenset(node for path in self.routes.values() for node in path)


def southeast_corners(graph: GammaGraph, nodes) -> frozenset:
    """
    PLUS boxes lying southeast of a path given as a node sequence.

    A box (r', c') is southeast iff c' <= c_last and r' >= h(c'), where h(c') is
    the row whose hook segment the path follows over column strip c'.
    """
    if len(nodes) < 2:
        return frozenset()
    row = graph.network.nodes[nodes[0]]["row"]
    col = 0
    row_line = {}
    for vertex in nodes[1:-1]:
        if vertex.row == row:
            for strip in range(col + 1, vertex.col + 1):
                row_line[strip] = row
            col = vertex.col
        elif vertex.col == col:
            row = vertex.row
        else:
            raise InvariantError(f"Path {nodes} leaves the hook segments at {tuple(vertex)}")
    return frozenset(box for box in graph.hooks if box.col <= col and box.row >= row_line[box.col])


@lru_cache(maxsize=64)
def routes_from(graph: GammaGraph) -> Dict[int, Tuple[Route, ...]]:
    """Every path from each source to a sink, the trivial path included."""
    sinks = [j for j in graph.sinks if graph.network.in_degree(j)]
    routes = {}
    for source in graph.sources:
        found = [Route(source, source, (source,), frozenset(), frozenset())]
        for nodes in sorted(nx.all_simple_paths(graph.network, source, sinks), key=_path_key):
            nodes = tuple(nodes)
            found.append(Route(source, nodes[-1], nodes, frozenset(nodes), southeast_corners(graph, nodes)))
        routes[source] = tuple(found)
    logger.debug(f"Indexed {sum(len(r) for r in routes.values())} routes over {len(routes)} sources")
    return routes


def _path_key(nodes) -> tuple:
    return (nodes[-1], tuple((v.row, v.col) for v in nodes[1:-1]))


def iter_families(graph: GammaGraph, subset: Subset, first_only: bool = False) -> Iterator[Tuple[Route, ...]]:
    """Yield the non-intersecting route tuples from I onto a subset, lazily."""
    # Backtracking over the moving sources top to bottom; sources in the
    # subset keep their trivial path.
    wanted = set(subset)
    moving = [i for i in graph.sources if i not in wanted]
    targets = wanted - set(graph.sources)
    if len(targets) != len(moving):
        return
    routes = routes_from(graph)
    fixed = tuple(routes[i][0] for i in graph.sources if i in wanted)
    chosen: List[Route] = []
    used = set()

    def extend(index):
        if index == len(moving):
            yield fixed + tuple(chosen)
            return
        for route in routes[moving[index]][1:]:
            if route.target not in targets or route.vertices & used:
                continue
            chosen.append(route)
            used.update(route.vertices)
            yield from extend(index + 1)
            used.difference_update(route.vertices)
            chosen.pop()

    for family in extend(0):
        yield tuple(sorted(family))
        if first_only:
            return


def enumerate_families(graph: GammaGraph, subset) -> List[PathFamily]:
    """
    All vertex-disjoint path families from the sources I onto the subset J.

    Args:
        graph: The Gamma-graph.
        subset: A k-subset J of [n].

    Returns:
        list: PathFamily objects in a deterministic order; empty when J is not
        reachable.
    """
    subset = make_subset(subset, n=graph.shape.n, k=graph.shape.k)
    return [
        PathFamily({route.source: route.nodes for route in family})
        for family in iter_families(graph, subset)
    ]


def path_weight(network: GammaNetwork, path) -> Fraction:
    """Product of the weights of the faces southeast of a path; 1 for a trivial path."""
    if isinstance(path, Route):
        below = path.below
    else:
        below = southeast_corners(network.graph, tuple(path))
    return prod((network.face_weights[c] for c in below), start=Fraction(1))


def family_weight(network: GammaNetwork, family) -> Fraction:
    paths = family.routes.values() if isinstance(family, PathFamily) else family
    return prod((path_weight(network, path) for path in paths), start=Fraction(1))


def _coordinate(network: GammaNetwork, subset: Subset) -> Fraction:
    return sum((family_weight(network, f) for f in iter_families(network.graph, subset)), Fraction(0))


def _measure_chunk(task) -> List[Tuple[Subset, Fraction]]:
    tableau, subsets, graph = task
    network = build_network(tableau, graph)
    return [(J, _coordinate(network, J)) for J in subsets]


def _chunks(items: list, count: int) -> List[list]:
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


def measure(
    tableau: LeTableau,
    subsets=None,
    use_multiprocessing: bool = False,
    max_workers: int = None,
    graph: GammaGraph = None,
) -> PluckerVector:
    """
    Boundary measurement of a Le-tableau.

    Args:
        tableau: The Le-tableau.
        subsets: Restrict the computation to these k-subsets (the base I is
            always included).
        use_multiprocessing: Fan the subsets out over a process pool.
        max_workers: Upper bound on the pool size.
        graph: The Gamma-graph of the tableau's diagram, when already built.

    Returns:
        PluckerVector: P_J = sum over families of the product of path weights,
        normalized so that P_I = 1.
    """
    shape = tableau.shape
    base = shape.boundary.base
    if subsets is None:
        wanted = list(all_subsets(shape.k, shape.n))
    else:
        wanted = sorted({make_subset(J, n=shape.n, k=shape.k) for J in subsets} | {base})
    logger.debug(f"Measuring {len(wanted)} coordinates of a tableau with shape {list(shape.rows)}")
    if graph is None:
        graph = build_graph(tableau.diagram)

    if use_multiprocessing:
        tasks = [(tableau, chunk, graph) for chunk in _chunks(wanted, 4 * (max_workers or 8))]
        results = run_tasks(_measure_chunk, tasks, use_multiprocessing, max_workers)
        raw = dict(pair for chunk in results for pair in chunk)
    else:
        raw = dict(_measure_chunk((tableau, wanted, graph)))
    if raw[base] != 1:
        raise InvariantError(f"P_I = {raw[base]} for the base {list(base)}, expected 1")
    return normalize_projective(raw, shape.k, shape.n)


def boundary_matrix(network: GammaNetwork) -> RationalMatrix:
    """
    The k x n source-to-boundary matrix of a Gamma-network.

    Row r is the identity on the source columns; at a sink j it holds
    (-1)^s times the sum of path weights from i_r to j, where s counts the
    sources strictly between i_r and j. Its maximal minors are the
    boundary measurements.
    """
    graph = network.graph
    shape = graph.shape
    sources = graph.sources
    routes = routes_from(graph)
    rows = []
    for source in sources:
        row = [Fraction(0)] * shape.n
        row[source - 1] = Fraction(1)
        for route in routes[source][1:]:
            row[route.target - 1] += path_weight(network, route)
        for j in graph.sinks:
            between = sum(1 for i in sources if source < i < j)
            if between % 2:
                row[j - 1] = -row[j - 1]
        rows.append(tuple(row))
    return RationalMatrix(tuple(rows))


def measure_det(tableau: LeTableau, subsets=None) -> PluckerVector:
    """Boundary measurement through the maximal minors of the boundary matrix."""
    network = build_network(tableau)
    matrix = boundary_matrix(network)
    if subsets is not None:
        subsets = sorted({make_subset(J, n=matrix.n, k=matrix.k) for J in subsets} | {network.graph.sources})
    return normalize_projective(maximal_minors(matrix, subsets=subsets), matrix.k, matrix.n)


def _matroid_chunk(task) -> List[Subset]:
    graph, subsets = task
    return [J for J in subsets if next(iter_families(graph, J, first_only=True), None) is not None]


def matroid_of(
    diagram: LeDiagram,
    subsets=None,
    use_multiprocessing: bool = False,
    max_workers: int = None,
    graph: GammaGraph = None,
) -> frozenset:
    """The subsets J reached by at least one non-intersecting path family."""
    shape = diagram.shape
    if graph is None:
        graph = build_graph(diagram)
    if subsets is None:
        wanted = list(all_subsets(shape.k, shape.n))
    else:
        wanted = sorted({make_subset(J, n=shape.n, k=shape.k) for J in subsets})
    if use_multiprocessing:
        tasks = [(graph, chunk) for chunk in _chunks(wanted, 4 * (max_workers or 8))]
        results = run_tasks(_matroid_chunk, tasks, use_multiprocessing, max_workers)
        return frozenset(J for chunk in results for J in chunk)
    return frozenset(_matroid_chunk((graph, wanted)))


def three_term_relations(vector: PluckerVector) -> List[dict]:
    """
    Check P_{Sac} P_{Sbd} = P_{Sab} P_{Scd} + P_{Sad} P_{Sbc} for every
    (k-2)-subset S and every a < b < c < d outside S.

    Returns:
        list: One dict per violated relation; empty when all hold.
    """
    k, n = vector.k, vector.n
    if k < 2 or n - k < 2:
        return []
    violations = []
    for rest in combinations(range(1, n + 1), k - 2):
        outside = [x for x in range(1, n + 1) if x not in rest]
        for a, b, c, d in combinations(outside, 4):
            def p(x, y):
                return vector[rest + (x, y)]
            lhs = p(a, c) * p(b, d)
            rhs = p(a, b) * p(c, d) + p(a, d) * p(b, c)
            if lhs != rhs:
                violations.append({"S": list(rest), "abcd": [a, b, c, d], "lhs": lhs, "rhs": rhs})
    return violations
