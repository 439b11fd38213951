import json
from fractions import Fraction

import pytest

from combinatorics import LeTableau
from main import main

TOP24_TABLEAU = {
    "k": 2,
    "n": 4,
    "rows": [2, 2],
    "entries": [[1, 1, "2"], [1, 2, "3"], [2, 1, "5"], [2, 2, "7"]],
}
TOP24_POINT = {
    "k": 2,
    "n": 4,
    "coords": {"1,2": "1", "1,3": "5", "1,4": "35", "2,3": "10", "2,4": "280", "3,4": "1050"},
}


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_measure(capsys):
    status, document = run(capsys, "measure", "--json", json.dumps(TOP24_TABLEAU), "--check-det")
    assert status == 0
    assert document == TOP24_POINT


def test_measure_limited_subsets(capsys):
    status, document = run(capsys, "measure", "--json", json.dumps(TOP24_TABLEAU), "--limit-subsets", "2,4")
    assert status == 0
    assert document["coords"] == {"1,2": "1", "2,4": "280"}


def test_measure_reads_a_file(capsys, tmp_path):
    path = tmp_path / "tableau.json"
    path.write_text(json.dumps(TOP24_TABLEAU), encoding="utf-8")
    status, document = run(capsys, "measure", "--input", str(path))
    assert status == 0
    assert document["coords"]["3,4"] == "1050"


def test_locate(capsys):
    status, document = run(capsys, "locate", "--json", json.dumps(TOP24_POINT), "--check-relations", "--verify-support")
    assert status == 0
    assert document["I"] == [1, 2]
    assert document["lambda"] == [2, 2]
    assert document["dimension"] == 4


def test_locate_from_a_matrix(capsys):
    matrix = {"rows": [["1", "1", "0"], ["0", "1", "1"]]}
    status, document = run(capsys, "locate", "--json", json.dumps(matrix))
    assert status == 0
    assert document["diagram"] == {"k": 2, "n": 3, "rows": [1, 1], "plus": [[1, 1], [2, 1]]}


def test_coords_with_ledger(capsys):
    status, document = run(capsys, "coords", "--json", json.dumps(TOP24_POINT), "--ledger")
    assert status == 0
    assert document["method"] == "both"
    assert document["tableau"]["entries"] == [[1, 2, "3"], [1, 1, "2"], [2, 2, "7"], [2, 1, "5"]]
    assert document["base"] == [[3, 4], [2, 3], [1, 4], [1, 3]]
    assert document["variables"] == {"minimal": 4, "mobius": 5}
    assert document["ledger"][0] == {"box": [1, 2], "eps": [[1, 2, 1], [1, 1, -1], [2, 2, -1]]}


def test_coords_rejects_broken_relations(capsys):
    point = dict(TOP24_POINT, coords=dict(TOP24_POINT["coords"], **{"2,4": "281"}))
    status, document = run(capsys, "coords", "--json", json.dumps(point), "--check-relations")
    assert status == 3
    assert document["error"]["code"] == "plucker_relations"


@pytest.mark.parametrize("changed", [{"2,4": "5"}, {"2,4": "0"}])
def test_coords_rejects_a_point_off_the_grassmannian(capsys, changed):
    point = dict(TOP24_POINT, coords=dict(TOP24_POINT["coords"], **changed))
    status, document = run(capsys, "coords", "--json", json.dumps(point))
    assert status == 3
    assert document["error"]["code"] == "not_in_cell"


def test_coords_with_workers(capsys):
    status, document = run(capsys, "coords", "--json", json.dumps(TOP24_POINT), "--method", "minimal", "--workers", "2")
    assert status == 0
    assert document["tableau"]["entries"] == [[1, 2, "3"], [1, 1, "2"], [2, 2, "7"], [2, 1, "5"]]


def test_roundtrip_of_a_random_tableau(capsys):
    diagram = {"k": 2, "n": 4, "rows": [2, 2], "plus": [[1, 1], [1, 2], [2, 1], [2, 2]]}
    status, document = run(capsys, "roundtrip", "--json", json.dumps(diagram), "--seed", "7")
    assert status == 0
    assert document["ok"] is True
    assert document["max_abs_diff"] == "0"
    assert len(document["tableau"]["entries"]) == 4


def test_roundtrip_of_a_given_tableau(capsys):
    status, document = run(capsys, "roundtrip", "--json", json.dumps(TOP24_TABLEAU))
    assert status == 0
    assert "tableau" not in document


def test_base(capsys):
    diagram = {"k": 1, "n": 3, "rows": [2], "plus": [[1, 1], [1, 2]]}
    status, document = run(capsys, "base", "--json", json.dumps(diagram))
    assert status == 0
    assert document == {"boxes": [[1, 2], [1, 1]], "base": [[3], [2]]}


def test_laurent(capsys):
    diagram = {"k": 1, "n": 3, "rows": [2], "plus": [[1, 1], [1, 2]]}
    status, document = run(capsys, "laurent", "--json", json.dumps(diagram), "--subset", "3")
    assert status == 0
    assert document == {"J": [3], "base": [[3], [2]], "terms": [{"coef": 1, "exps": [1, 0]}]}


def test_enumerate(capsys):
    status, document = run(capsys, "enumerate", "--k", "1", "--n", "3")
    assert status == 0
    assert document["count"] == 7
    status, document = run(capsys, "enumerate", "--k", "2", "--n", "4", "--summary")
    assert document["count"] == 33
    assert document["by_dimension"]["4"] == 1


def test_matroid(capsys):
    diagram = {"k": 2, "n": 4, "rows": [2, 2], "plus": [[1, 1], [1, 2], [2, 1], [2, 2]]}
    status, document = run(capsys, "matroid", "--json", json.dumps(diagram))
    assert status == 0
    assert len(document["bases"]) == 6


def test_docs(capsys):
    status, document = run(capsys, "docs", "measure")
    assert status == 0
    assert document["format"] == "markdown"
    assert document["text"].startswith("# ")
    status, document = run(capsys, "docs", "locate", "--html")
    assert document["format"] == "html"
    assert "<h1>" in document["text"]


@pytest.mark.parametrize(
    "argv, status, code",
    [
        (["measure", "--json", "{not json"], 2, "schema"),
        (["measure", "--json", '{"k": 1, "n": 2, "rows": [1], "entries": [[1, 1, 0.5]]}'], 2, "schema"),
        (["locate", "--json", '{"rows": [["1", "0", "1"], ["0", "1", "-1"]]}'], 3, "mixed_signs"),
        (["locate", "--json", '{"rows": [["1", "2"], ["2", "4"]]}'], 3, "rank_deficient"),
        (["enumerate", "--k", "1", "--n", "13"], 3, "guard_exceeded"),
        (["locate", "--json", '{"k": 2, "n": 3, "coords": {"1,2": "1", "2,1": "2"}}'], 2, "schema"),
        (["coords", "--json", '{"k": 2, "n": 4, "coords": {"1,2": "1", "2,3": "1", "1,4": "1"}}'], 3, "not_in_cell"),
    ],
)
def test_error_exit_statuses(capsys, argv, status, code):
    actual, document = run(capsys, *argv)
    assert actual == status
    assert document["error"]["code"] == code
    assert document["error"]["exit"] == status


def _all_ones(vector, diagram, **kwargs):
    return LeTableau.from_plus(diagram, {box: Fraction(1) for box in diagram.plus_boxes})


@pytest.mark.parametrize(
    "verb, document",
    [("roundtrip", TOP24_TABLEAU), ("coords", TOP24_POINT)],
)
def test_internal_failure_exits_with_status_4(capsys, monkeypatch, verb, document):
    monkeypatch.setattr("main.coords_minimal", _all_ones)
    status, output = run(capsys, verb, "--json", json.dumps(document))
    assert status == 4
    assert output["error"]["code"] == "invariant"
    assert output["error"]["exit"] == 4
