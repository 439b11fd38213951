"""
Partitions in a k x (n-k) rectangle, k-subsets of [n], Le-diagrams and Le-tableaux.

Boxes are addressed as (row, col) with rows counted from the top and columns
counted from the right of the k x (n-k) rectangle. The boundary path of a
partition is labeled 1..n from the northeast corner to the southwest corner;
south steps are the sources I (one per row, empty rows included) and west
steps are the sinks (one per column).
"""
import logging
import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterator, Mapping, NamedTuple, Tuple

from config import DEFAULT_MAX_ENTRY, check_guard
from errors import SchemaError

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


class BoxCoord(NamedTuple):
    row: int
    col: int


class Entry(Enum):
    ZERO = "0"
    PLUS = "+"


def reading_key(box: BoxCoord) -> tuple:
    """Row-major reading order: top row first, left to right inside a row."""
    return (box.row, -box.col)


def make_subset(elements, n: int = None, k: int = None) -> Subset:
    """
    Normalize an iterable of labels into a sorted Subset.

    Raises:
        SchemaError: On repeated labels, labels outside 1..n, or the wrong size.
    """
    try:
        items = [int(e) for e in elements]
    except (TypeError, ValueError):
        raise SchemaError(f"Subset elements must be integers, got {elements!r}")
    subset = tuple(sorted(items))
    if len(set(subset)) != len(subset):
        raise SchemaError(f"Subset has repeated elements: {list(elements)}")
    if n is not None and any(e < 1 or e > n for e in subset):
        raise SchemaError(f"Subset {list(subset)} is not contained in [1..{n}]")
    if k is not None and len(subset) != k:
        raise SchemaError(f"Subset {list(subset)} has size {len(subset)}, expected {k}")
    return subset


def all_subsets(k: int, n: int) -> Iterator[Subset]:
    """All k-subsets of [n] in lexicographic order."""
    return combinations(range(1, n + 1), k)


@dataclass(frozen=True)
class Partition:
    rows: Tuple[int, ...]
    k: int
    n: int

    def __post_init__(self):
        if self.k < 0 or self.n < self.k:
            raise SchemaError(f"Need 0 <= k <= n, got k={self.k}, n={self.n}")
        if len(self.rows) != self.k:
            raise SchemaError(f"Partition needs exactly k={self.k} rows, got {list(self.rows)}")
        width = self.n - self.k
        previous = width
        for length in self.rows:
            if not isinstance(length, int) or length < 0 or length > width:
                raise SchemaError(f"Row lengths must lie in 0..{width}, got {list(self.rows)}")
            if length > previous:
                raise SchemaError(f"Row lengths must be weakly decreasing, got {list(self.rows)}")
            previous = length

    @property
    def width(self) -> int:
        return self.n - self.k

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __contains__(self, box) -> bool:
        row, col = box
        if row < 1 or row > self.k:
            return False
        return self.width - self.rows[row - 1] < col <= self.width

    def row_cols(self, row: int) -> range:
        """Columns (from the right) occupied by a row, east to west."""
        return range(self.width - self.rows[row - 1] + 1, self.width + 1)

    def column_length(self, col: int) -> int:
        return sum(1 for length in self.rows if self.width - length < col)

    def boxes(self) -> Tuple[BoxCoord, ...]:
        """All boxes in reading order."""
        return tuple(
            BoxCoord(row, col)
            for row in range(1, self.k + 1)
            for col in reversed(self.row_cols(row))
        )

    @cached_property
    def boundary(self) -> "Boundary":
        return base_from_shape(self)


class Boundary(NamedTuple):
    """Boundary labeling of a partition: the base I, i_r per row and j_c per column."""

    base: Subset
    sources: Tuple[int, ...]
    sinks: Tuple[int, ...]

    def source(self, row: int) -> int:
        return self.sources[row - 1]

    def sink(self, col: int) -> int:
        return self.sinks[col - 1]


def shape_from_base(base, k: int, n: int) -> Partition:
    """
    Partition whose boundary path has south steps exactly at the labels in base.

    Args:
        base: The k-subset I of [n].
        k: Number of rows.
        n: Total number of boundary labels.

    Returns:
        Partition: lambda with lambda_t = #{j not in I : j > i_t}.
    """
    subset = make_subset(base, n=n)
    if len(subset) != k:
        raise SchemaError(f"Base {list(subset)} has size {len(subset)}, expected k={k}")
    sinks = [j for j in range(1, n + 1) if j not in subset]
    rows = tuple(sum(1 for j in sinks if j > i) for i in subset)
    return Partition(rows, k, n)


def base_from_shape(shape: Partition) -> Boundary:
    """
    Label the boundary path of shape from northeast to southwest.

    Row t's south step comes after the n-k-lambda_t west steps of the columns
    east of that row, so i_t = t + (n-k) - lambda_t; the sinks fill the rest
    in column order (column 1 is the rightmost).

    Returns:
        Boundary: (I, (i_1..i_k), (j_1..j_{n-k})).
    """
    sources = tuple(t + shape.width - length for t, length in enumerate(shape.rows, start=1))
    source_set = set(sources)
    sinks = tuple(j for j in range(1, shape.n + 1) if j not in source_set)
    return Boundary(sources, sources, sinks)


def validate_le_diagram(shape: Partition, filling: Mapping) -> bool:
    """
    Check the Le-property of a {ZERO, PLUS} filling.

    Args:
        shape: The partition being filled.
        filling: Mapping BoxCoord -> Entry defined on exactly the boxes of shape.

    Returns:
        bool: False iff some ZERO has a PLUS above it and a PLUS to its left.

    Raises:
        SchemaError: If the filling misses boxes of shape or names boxes outside it.
    """
    boxes = set(shape.boxes())
    keys = {BoxCoord(*box) for box in filling}
    if keys != boxes:
        missing = sorted(boxes - keys)
        extra = sorted(keys - boxes)
        raise SchemaError(f"Filling does not match shape {list(shape.rows)}: missing {missing}, extra {extra}")

    plus = {BoxCoord(*box) for box, value in filling.items() if _as_entry(value) is Entry.PLUS}
    for box in boxes - plus:
        above = any((r, box.col) in plus for r in range(1, box.row))
        left = any((box.row, c) in plus for c in range(box.col + 1, shape.width + 1))
        if above and left:
            return False
    return True


def _as_entry(value) -> Entry:
    if isinstance(value, Entry):
        return value
    if value in ("+", 1, True):
        return Entry.PLUS
    if value in ("0", 0, False):
        return Entry.ZERO
    raise SchemaError(f"Filling values must be '0' or '+', got {value!r}")


@dataclass(frozen=True)
class LeDiagram:
    shape: Partition
    plus: frozenset

    def __post_init__(self):
        object.__setattr__(self, "plus", frozenset(BoxCoord(*box) for box in self.plus))
        outside = [box for box in self.plus if box not in self.shape]
        if outside:
            raise SchemaError(f"PLUS boxes {sorted(outside)} lie outside shape {list(self.shape.rows)}")
        if not validate_le_diagram(self.shape, self.filling):
            raise SchemaError(f"Filling violates the Le-property: {sorted(self.plus)}")

    @classmethod
    def from_filling(cls, shape: Partition, filling: Mapping) -> "LeDiagram":
        if not validate_le_diagram(shape, filling):
            raise SchemaError("Filling violates the Le-property")
        plus = [box for box, value in filling.items() if _as_entry(value) is Entry.PLUS]
        return cls(shape, frozenset(plus))

    @property
    def k(self) -> int:
        return self.shape.k

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def dimension(self) -> int:
        return len(self.plus)

    @property
    def filling(self) -> Dict[BoxCoord, Entry]:
        return {box: Entry.PLUS if box in self.plus else Entry.ZERO for box in self.shape.boxes()}

    @cached_property
    def plus_boxes(self) -> Tuple[BoxCoord, ...]:
        return tuple(sorted(self.plus, key=reading_key))

    @property
    def boundary(self) -> Boundary:
        return self.shape.boundary

    def is_plus(self, box) -> bool:
        return box in self.plus


@dataclass(frozen=True)
class LeTableau:
    shape: Partition
    entries: Mapping

    def __post_init__(self):
        values = {}
        for box, value in self.entries.items():
            box = BoxCoord(*box)
            if box not in self.shape:
                raise SchemaError(f"Entry at {tuple(box)} lies outside shape {list(self.shape.rows)}")
            if not isinstance(value, (int, Fraction)) or isinstance(value, bool):
                raise SchemaError(f"Entry at {tuple(box)} must be an exact rational, got {value!r}")
            value = Fraction(value)
            if value < 0:
                raise SchemaError(f"Entry at {tuple(box)} is negative: {value}")
            values[box] = value
        for box in self.shape.boxes():
            values.setdefault(box, Fraction(0))
        object.__setattr__(self, "entries", values)
        # validates the induced filling
        self.diagram

    @classmethod
    def from_plus(cls, diagram: LeDiagram, values: Mapping) -> "LeTableau":
        """Build a tableau from values on the PLUS boxes of a diagram."""
        missing = [box for box in diagram.plus if box not in values]
        if missing:
            raise SchemaError(f"Missing entries for PLUS boxes {sorted(missing)}")
        tableau = cls(diagram.shape, {box: values[box] for box in diagram.plus})
        if tableau.diagram != diagram:
            raise SchemaError("Entries at PLUS boxes must be strictly positive")
        return tableau

    @cached_property
    def diagram(self) -> LeDiagram:
        return LeDiagram(self.shape, frozenset(box for box, value in self.entries.items() if value > 0))

    def __getitem__(self, box) -> Fraction:
        return self.entries[BoxCoord(*box)]


def diagram_from_tableau(tableau: LeTableau) -> LeDiagram:
    return tableau.diagram


def enumerate_le_diagrams(k: int, n: int, allow_large: bool = False) -> Iterator[LeDiagram]:
    """
    Yield every Le-diagram whose shape fits in the k x (n-k) rectangle.

    Shapes come in lex order of their bases I; fillings of a shape come in
    binary order (boxes in reading order, first box most significant, ZERO=0).

    Raises:
        GuardError: If n exceeds the configured guard and allow_large is False.
    """
    if k < 0 or n < k:
        raise SchemaError(f"Need 0 <= k <= n, got k={k}, n={n}")
    check_guard(n, allow_large)
    for base in all_subsets(k, n):
        shape = shape_from_base(base, k, n)
        boxes = shape.boxes()
        logger.debug(f"Enumerating fillings of shape {list(shape.rows)} ({len(boxes)} boxes)")
        for plus in _le_fillings(shape, boxes):
            yield LeDiagram(shape, frozenset(plus))


def _le_fillings(shape: Partition, boxes: Tuple[BoxCoord, ...]) -> Iterator[list]:
    # Depth-first, ZERO before PLUS. A ZERO is checked when placed: everything
    # above it and to its left is already decided in reading order.
    plus_in_col = [0] * (shape.width + 1)
    plus_in_row = [0] * (shape.k + 1)
    chosen = []

    def place(index):
        if index == len(boxes):
            yield list(chosen)
            return
        box = boxes[index]
        if not (plus_in_col[box.col] and plus_in_row[box.row]):
            yield from place(index + 1)
        chosen.append(box)
        plus_in_col[box.col] += 1
        plus_in_row[box.row] += 1
        yield from place(index + 1)
        plus_in_row[box.row] -= 1
        plus_in_col[box.col] -= 1
        chosen.pop()

    yield from place(0)


def count_by_dimension(k: int, n: int, allow_large: bool = False) -> Dict[int, int]:
    """Number of Le-diagrams (cells) in the k x (n-k) rectangle per dimension |L|."""
    counts = Counter(diagram.dimension for diagram in enumerate_le_diagrams(k, n, allow_large))
    return dict(sorted(counts.items()))


def random_tableau(diagram: LeDiagram, rng: random.Random, max_entry: int = DEFAULT_MAX_ENTRY) -> LeTableau:
    """Random Le-tableau on a diagram: entries p/q with 1 <= p, q <= max_entry."""
    values = {
        box: Fraction(rng.randint(1, max_entry), rng.randint(1, max_entry))
        for box in diagram.plus_boxes
    }
    return LeTableau.from_plus(diagram, values)


def render_diagram(diagram: LeDiagram, face_of: Mapping = None) -> str:
    """
    Text grid of a diagram, one line per row, drawn left to right.

    Boxes show '+' or '0'. With face_of (box -> face corner or None) a second
    grid labels every box with the index of its face in reading order of the
    corners, '.' standing for the boundary face.
    """
    shape = diagram.shape
    lines = []
    for row in range(1, shape.k + 1):
        cells = ["+" if (row, col) in diagram.plus else "0" for col in reversed(shape.row_cols(row))]
        lines.append(" ".join(cells) if cells else "")
    if face_of is None:
        return "\n".join(lines)

    labels = {corner: index for index, corner in enumerate(diagram.plus_boxes)}
    lines.append("")
    for row in range(1, shape.k + 1):
        cells = []
        for col in reversed(shape.row_cols(row)):
            corner = face_of.get(BoxCoord(row, col))
            cells.append("." if corner is None else _base36(labels[corner]))
        lines.append(" ".join(cells))
    return "\n".join(lines)


def _base36(value: int) -> str:
    digits = "0123456789abcdefghijklmnopqrstuvwxyz"
    return digits[value] if value < len(digits) else f"<{value}>"
