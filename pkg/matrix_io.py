"""
Exact ingestion of points of the Grassmannian: maximal minors of k x n rational
matrices, sign checks and the projective normalization of Plücker vectors.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm, prod
from typing import Dict, Mapping, Sequence, Tuple

from combinatorics import Subset, all_subsets, make_subset
from errors import MathInputError, MixedSignError, RankError, SchemaError

logger = logging.getLogger(__name__)

COFACTOR_MAX_SIZE = 4


@dataclass(frozen=True)
class PluckerVector:
    k: int
    n: int
    coords: Mapping

    def __post_init__(self):
        coords = {}
        for key, value in self.coords.items():
            subset = make_subset(key, n=self.n, k=self.k)
            value = Fraction(value)
            if value < 0:
                raise MixedSignError(f"Negative Plücker coordinate at {list(subset)}: {value}")
            if value:
                coords[subset] = value
        if not coords:
            raise MathInputError("Plücker vector has no nonzero coordinate", code="all_zero")
        lexmin = min(coords)
        if coords[lexmin] != 1:
            raise SchemaError(f"Lex-minimal coordinate {list(lexmin)} must be 1, got {coords[lexmin]}")
        object.__setattr__(self, "coords", dict(sorted(coords.items())))

    def __getitem__(self, subset) -> Fraction:
        return self.coords.get(tuple(sorted(subset)), Fraction(0))

    @property
    def support(self) -> frozenset:
        return frozenset(self.coords)

    @property
    def base(self) -> Subset:
        """Lex-minimal element of the support."""
        return next(iter(self.coords))


@dataclass(frozen=True)
class RationalMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise SchemaError("Matrix must have at least one row and one column")
        if any(len(row) != len(rows[0]) for row in rows):
            raise SchemaError("Matrix rows must all have the same length")
        if len(rows) > len(rows[0]):
            raise SchemaError(f"Need k <= n, got a {len(rows)} x {len(rows[0])} matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def columns(self, subset) -> list:
        """Square submatrix on the given 1-based columns."""
        return [[row[j - 1] for j in subset] for row in self.rows]


def determinant(matrix: Sequence[Sequence], method: str = "auto") -> Fraction:
    """
    Exact determinant of a square rational matrix.

    Args:
        matrix: Square matrix of Fractions or ints.
        method: "bareiss", "cofactor", or "auto" (cofactor up to 4 x 4).

    Returns:
        Fraction: The determinant.
    """
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    if method == "auto":
        method = "cofactor" if size <= COFACTOR_MAX_SIZE else "bareiss"
    if method == "cofactor":
        return _cofactor_det([[Fraction(x) for x in row] for row in matrix])
    if method == "bareiss":
        return _bareiss_det(matrix)
    raise SchemaError(f"Unknown determinant method: {method!r}")


def _cofactor_det(matrix) -> Fraction:
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = Fraction(0)
    for j, pivot in enumerate(matrix[0]):
        if not pivot:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        sign = -1 if j % 2 else 1
        total += sign * pivot * _cofactor_det(minor)
    return total


def _bareiss_det(matrix) -> Fraction:
    # Clear denominators row by row, eliminate over the integers, scale back.
    size = len(matrix)
    scales = []
    work = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row))
        scales.append(scale)
        work.append([int(x * scale) for x in row])

    sign = 1
    previous = 1
    for k in range(size - 1):
        # look for a pivot in the current column
        if not work[k][k]:
            for i in range(k + 1, size):
                if work[i][k]:
                    work[i], work[k] = work[k], work[i]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = (work[k][k] * work[i][j] - work[i][k] * work[k][j]) // previous
        previous = work[k][k]
    return Fraction(sign * work[size - 1][size - 1], prod(scales))


def leibniz_det(matrix) -> Fraction:
    """Determinant by the permutation expansion; slow, used as an oracle in tests."""
    size = len(matrix)
    total = Fraction(0)
    for perm in permutations(range(size)):
        inversions = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
        term = prod((Fraction(matrix[i][perm[i]]) for i in range(size)), start=Fraction(1))
        total += -term if inversions % 2 else term
    return total


def maximal_minors(matrix: RationalMatrix, method: str = "auto", subsets=None) -> Dict[Subset, Fraction]:
    """All k x k minors (or those indexed by subsets), keyed by column subset in lex order."""
    if subsets is None:
        subsets = all_subsets(matrix.k, matrix.n)
    return {tuple(J): determinant(matrix.columns(J), method) for J in subsets}


def normalize_projective(raw: Mapping, k: int, n: int) -> PluckerVector:
    """
    Choose the projective representative whose lex-minimal nonzero coordinate is 1.

    Args:
        raw: Mapping subset -> rational, zeros allowed.
        k: Subset size.
        n: Ground set size.

    Returns:
        PluckerVector: Nonnegative, normalized.

    Raises:
        MathInputError: If every coordinate is zero.
        MixedSignError: If coordinates of both signs remain after the global sign fix.
    """
    coords = {}
    for key, value in raw.items():
        value = Fraction(value)
        if value:
            coords[make_subset(key, n=n, k=k)] = value
    if not coords:
        raise MathInputError("All Plücker coordinates are zero", code="all_zero")
    lead = coords[min(coords)]
    if lead < 0:
        coords = {J: -value for J, value in coords.items()}
        lead = -lead
    negative = sorted(J for J, value in coords.items() if value < 0)
    if negative:
        raise MixedSignError(
            f"Plücker coordinates have mixed signs; negative at {[list(J) for J in negative[:5]]}"
        )
    return PluckerVector(k, n, {J: value / lead for J, value in coords.items()})


def plucker_from_matrix(matrix: RationalMatrix, method: str = "auto") -> PluckerVector:
    """
    Plücker vector of the row span of a k x n matrix.

    Raises:
        RankError: If all maximal minors vanish.
        MixedSignError: If the point is not in the nonnegative Grassmannian.
    """
    minors = maximal_minors(matrix, method)
    logger.debug(f"Computed {len(minors)} maximal minors of a {matrix.k} x {matrix.n} matrix")
    if not any(minors.values()):
        raise RankError(f"Matrix has rank < {matrix.k}: every maximal minor vanishes")
    return normalize_projective(minors, matrix.k, matrix.n)
