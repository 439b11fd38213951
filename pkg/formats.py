"""
JSON codecs for diagrams, tableaux, Plücker vectors, matrices and posets.

Rationals travel as strings "p/q" or "p" (decimal strings such as "0.25" are
accepted and converted exactly). JSON floating point numbers are rejected.
"""
import json
import re
from fractions import Fraction
from typing import Any, Dict

from combinatorics import BoxCoord, LeDiagram, LeTableau, Partition, make_subset, reading_key
from errors import SchemaError
from matrix_io import PluckerVector, RationalMatrix, normalize_projective

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$|^[+-]?(\d+\.\d*|\.\d+|\d+)$")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"Floating point value {value!r} is not accepted; use a string 'p/q'")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value.strip()):
        raise SchemaError(f"Bad rational {value!r}; expected 'p/q', 'p' or a decimal string")
    try:
        return Fraction(value.strip())
    except ZeroDivisionError:
        raise SchemaError(f"Bad rational {value!r}: zero denominator")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def subset_key(subset) -> str:
    return ",".join(str(e) for e in subset)


def parse_subset_key(key: str, n: int = None, k: int = None):
    if isinstance(key, (list, tuple)):
        return make_subset(key, n=n, k=k)
    if not isinstance(key, str):
        raise SchemaError(f"Subset key must be a string like '1,3,5', got {key!r}")
    parts = [p for p in key.replace(" ", "").split(",") if p]
    if not all(p.isdigit() for p in parts):
        raise SchemaError(f"Bad subset key {key!r}")
    return make_subset(parts, n=n, k=k)


def parse_subset_list(text: str, n: int = None, k: int = None) -> list:
    """Semicolon-separated subsets, e.g. '1,2;1,3'."""
    return [parse_subset_key(part, n=n, k=k) for part in text.split(";") if part.strip()]


def loads(text: str) -> Any:
    """Parse a JSON document; floats are refused at parse time."""
    def refuse_float(token):
        raise SchemaError(f"Floating point literal {token} is not accepted; use a string 'p/q'")

    try:
        return json.loads(text, parse_float=refuse_float)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Invalid JSON: {str(e)}")


def dumps(document: Any) -> str:
    return json.dumps(document, sort_keys=True, ensure_ascii=False)


def _require(document: Dict, *keys):
    if not isinstance(document, dict):
        raise SchemaError(f"Expected a JSON object, got {type(document).__name__}")
    missing = [key for key in keys if key not in document]
    if missing:
        raise SchemaError(f"Missing keys: {missing}")
    return [document[key] for key in keys]


def _int(value, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"'{name}' must be an integer, got {value!r}")
    return value


def _box(value) -> BoxCoord:
    if not isinstance(value, (list, tuple)) or len(value) < 2:
        raise SchemaError(f"Box must be [row, col], got {value!r}")
    return BoxCoord(_int(value[0], "row"), _int(value[1], "col"))


def shape_from_json(document: Dict) -> Partition:
    k, n, rows = _require(document, "k", "n", "rows")
    if not isinstance(rows, list):
        raise SchemaError("'rows' must be a list of integers")
    return Partition(tuple(_int(r, "rows") for r in rows), _int(k, "k"), _int(n, "n"))


def diagram_to_json(diagram: LeDiagram) -> Dict:
    shape = diagram.shape
    return {
        "k": shape.k,
        "n": shape.n,
        "rows": list(shape.rows),
        "plus": [list(box) for box in diagram.plus_boxes],
    }


def diagram_from_json(document: Dict) -> LeDiagram:
    shape = shape_from_json(document)
    (plus,) = _require(document, "plus")
    if not isinstance(plus, list):
        raise SchemaError("'plus' must be a list of [row, col] pairs")
    return LeDiagram(shape, frozenset(_box(box) for box in plus))


def tableau_to_json(tableau: LeTableau) -> Dict:
    document = diagram_to_json(tableau.diagram)
    document["entries"] = [
        [box.row, box.col, format_rational(tableau[box])] for box in tableau.diagram.plus_boxes
    ]
    return document


def tableau_from_json(document: Dict) -> LeTableau:
    shape = shape_from_json(document)
    (entries,) = _require(document, "entries")
    if not isinstance(entries, list):
        raise SchemaError("'entries' must be a list of [row, col, 'p/q'] triples")
    values = {}
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 3:
            raise SchemaError(f"Entry must be [row, col, 'p/q'], got {entry!r}")
        box = _box(entry)
        if box in values:
            raise SchemaError(f"Duplicate entry for box {list(box)}")
        values[box] = parse_rational(entry[2])
    tableau = LeTableau(shape, values)
    if "plus" in document and diagram_from_json(document) != tableau.diagram:
        raise SchemaError("'plus' does not match the positive entries")
    return tableau


def plucker_to_json(vector: PluckerVector) -> Dict:
    return {
        "k": vector.k,
        "n": vector.n,
        "coords": {subset_key(J): format_rational(value) for J, value in vector.coords.items()},
    }


def plucker_from_json(document: Dict) -> PluckerVector:
    """Read a Plücker vector; the result is projectively normalized."""
    k, n, coords = _require(document, "k", "n", "coords")
    k, n = _int(k, "k"), _int(n, "n")
    if not isinstance(coords, dict):
        raise SchemaError("'coords' must map subset keys like '1,3' to rationals")
    raw = {}
    for key, value in coords.items():
        subset = parse_subset_key(key, n=n, k=k)
        if subset in raw:
            raise SchemaError(f"Key {key!r} repeats the subset {subset_key(subset)}")
        raw[subset] = parse_rational(value)
    return normalize_projective(raw, k, n)


def matrix_from_json(document: Dict) -> RationalMatrix:
    (rows,) = _require(document, "rows")
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise SchemaError("'rows' must be a list of lists of rationals")
    matrix = RationalMatrix(tuple(tuple(parse_rational(x) for x in row) for row in rows))
    if "k" in document and document["k"] != matrix.k:
        raise SchemaError(f"'k' is {document['k']} but the matrix has {matrix.k} rows")
    if "n" in document and document["n"] != matrix.n:
        raise SchemaError(f"'n' is {document['n']} but the matrix has {matrix.n} columns")
    return matrix


def matrix_to_json(matrix: RationalMatrix) -> Dict:
    return {
        "k": matrix.k,
        "n": matrix.n,
        "rows": [[format_rational(x) for x in row] for row in matrix.rows],
    }


def is_matrix_document(document) -> bool:
    return isinstance(document, dict) and "coords" not in document and isinstance(document.get("rows"), list) \
        and all(isinstance(row, list) for row in document["rows"])


def poset_json(poset) -> Dict:
    """{"faces": [[row, col], ...], "covers": [[i, j], ...]} with indices into faces."""
    index = {corner: i for i, corner in enumerate(poset.elements)}
    return {
        "faces": [list(corner) for corner in poset.elements],
        "covers": [[index[a], index[b]] for a, b in poset.covers],
    }


def sorted_boxes(boxes) -> list:
    return [list(box) for box in sorted(boxes, key=reading_key)]
