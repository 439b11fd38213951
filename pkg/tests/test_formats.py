from fractions import Fraction

import pytest

from errors import MixedSignError, SchemaError
from formats import (
    diagram_from_json,
    diagram_to_json,
    dumps,
    format_rational,
    is_matrix_document,
    loads,
    matrix_from_json,
    parse_rational,
    parse_subset_key,
    parse_subset_list,
    plucker_from_json,
    plucker_to_json,
    tableau_from_json,
    tableau_to_json,
)


@pytest.mark.parametrize(
    "text, expected",
    [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), ("0.25", Fraction(1, 4)), (" 7 ", Fraction(7)), (5, Fraction(5))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "abc", "1/2/3", None, "1e3"])
def test_parse_rational_rejects(bad):
    with pytest.raises(SchemaError):
        parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_loads_refuses_float_literals():
    with pytest.raises(SchemaError):
        loads('{"k": 2, "n": 4, "coords": {"1,2": 0.5}}')
    with pytest.raises(SchemaError):
        loads('{"k": 2,')


def test_dumps_sorts_keys():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a": [1, 2], "b": 1}'


def test_subset_keys():
    assert parse_subset_key("3, 1") == (1, 3)
    assert parse_subset_list("1,2;1,3;", n=4, k=2) == [(1, 2), (1, 3)]
    with pytest.raises(SchemaError):
        parse_subset_key("1;2")
    with pytest.raises(SchemaError):
        parse_subset_key("1,5", n=4, k=2)
    with pytest.raises(SchemaError):
        parse_subset_key("1,1", n=4, k=2)


def test_diagram_codec(top24_diagram):
    document = diagram_to_json(top24_diagram)
    assert document == {"k": 2, "n": 4, "rows": [2, 2], "plus": [[1, 2], [1, 1], [2, 2], [2, 1]]}
    assert diagram_from_json(loads(dumps(document))) == top24_diagram


def test_diagram_from_json_rejects_non_le():
    with pytest.raises(SchemaError):
        diagram_from_json({"k": 2, "n": 4, "rows": [2, 2], "plus": [[1, 1], [2, 2]]})
    with pytest.raises(SchemaError):
        diagram_from_json({"k": 2, "n": 4, "rows": [2, 2]})
    with pytest.raises(SchemaError):
        diagram_from_json([1, 2])


def test_tableau_codec(top24_tableau):
    document = tableau_to_json(top24_tableau)
    assert document["entries"] == [[1, 2, "3"], [1, 1, "2"], [2, 2, "7"], [2, 1, "5"]]
    assert tableau_from_json(document) == top24_tableau


def test_tableau_from_json_checks_plus():
    document = {"k": 1, "n": 3, "rows": [2], "plus": [[1, 1]], "entries": [[1, 2, "1/2"]]}
    with pytest.raises(SchemaError):
        tableau_from_json(document)
    del document["plus"]
    assert tableau_from_json(document)[(1, 2)] == Fraction(1, 2)


def test_tableau_from_json_rejects_duplicates_and_negatives():
    with pytest.raises(SchemaError):
        tableau_from_json({"k": 1, "n": 2, "rows": [1], "entries": [[1, 1, "1"], [1, 1, "2"]]})
    with pytest.raises(SchemaError):
        tableau_from_json({"k": 1, "n": 2, "rows": [1], "entries": [[1, 1, "-1"]]})


def test_plucker_from_json_normalizes():
    vector = plucker_from_json({"k": 2, "n": 3, "coords": {"1,2": "2", "1,3": "4", "2,3": "0"}})
    assert vector.coords == {(1, 2): 1, (1, 3): 2}
    assert plucker_to_json(vector) == {"k": 2, "n": 3, "coords": {"1,2": "1", "1,3": "2"}}


def test_plucker_from_json_rejects_mixed_signs():
    with pytest.raises(MixedSignError):
        plucker_from_json({"k": 2, "n": 3, "coords": {"1,2": "1", "1,3": "-1"}})


def test_plucker_from_json_rejects_repeated_subsets():
    with pytest.raises(SchemaError):
        plucker_from_json({"k": 2, "n": 3, "coords": {"1,2": "1", "2,1": "2"}})
    with pytest.raises(SchemaError):
        plucker_from_json({"k": 2, "n": 3, "coords": {"1,3": "1", " 1, 3": "1"}})


def test_matrix_documents():
    document = {"k": 2, "n": 3, "rows": [["1", "1", "0"], ["0", "1", "1"]]}
    assert is_matrix_document(document)
    assert not is_matrix_document({"k": 2, "n": 4, "rows": [2, 2], "plus": []})
    assert matrix_from_json(document).n == 3
    with pytest.raises(SchemaError):
        matrix_from_json({"k": 3, "rows": [["1", "1", "0"], ["0", "1", "1"]]})
