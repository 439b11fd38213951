"""
Command line front end: one verb per invocation, one JSON document in, one
JSON document out.

Exit statuses: 0 success, 2 malformed input, 3 mathematically invalid input,
4 failed internal consistency check.
"""
import argparse
import logging
import random
import sys

from cell_locator import locate
from combinatorics import count_by_dimension, enumerate_le_diagrams, random_tableau
from config import DEFAULT_MAX_ENTRY, DEFAULT_SEED, LOG_FORMAT
from errors import GrknError, InvariantError, MathInputError, SchemaError
from gamma_graph import build_graph
from formats import (
    diagram_from_json,
    diagram_to_json,
    dumps,
    format_rational,
    is_matrix_document,
    loads,
    matrix_from_json,
    parse_subset_key,
    parse_subset_list,
    plucker_from_json,
    plucker_to_json,
    sorted_boxes,
    tableau_from_json,
    tableau_to_json,
)
from help_docs import available_verbs, help_document
from inversion import (
    CoordsMethod,
    coords_minimal,
    coords_mobius,
    epsilon_ledger,
    laurent_expand,
    plucker_variables,
    tp_base,
    verify_coordinates,
)
from matrix_io import PluckerVector, plucker_from_matrix
from measurement import matroid_of, measure, measure_det, three_term_relations

logger = logging.getLogger(__name__)

VERBS = ("locate", "coords", "measure", "roundtrip", "base", "laurent", "enumerate", "matroid", "docs")


def configure_logging(verbose: bool = False, log_file: str = None) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    if log_file:
        handler = logging.FileHandler(log_file, mode='a', encoding='utf-8')
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logging.getLogger().addHandler(handler)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--input", metavar="PATH", help="read the JSON document from a file (default: stdin)")
    source.add_argument("--json", metavar="TEXT", help="read the JSON document from the command line")
    common.add_argument("--verbose", action="store_true", help="log progress at DEBUG level on stderr")
    common.add_argument("--log-file", metavar="PATH", help="also append log records to a file")
    common.add_argument("--parallel", action="store_true", help="fan independent work out over a process pool")
    common.add_argument("--workers", type=int, default=None, help="upper bound on the process pool size")

    parser = argparse.ArgumentParser(prog="grkn", description="Positroid cells and Le-coordinates of nonnegative Grassmannian points")
    verbs = parser.add_subparsers(dest="verb", required=True)

    p = verbs.add_parser("locate", parents=[common], help="point -> Le-diagram of its cell")
    p.add_argument("--check-relations", action="store_true", help="check the three-term Plücker relations first")
    p.add_argument("--verify-support", action="store_true", help="compare the support with the matroid of the cell")

    p = verbs.add_parser("coords", parents=[common], help="point -> Le-tableau")
    p.add_argument("--method", choices=["mobius", "minimal", "both"], default="both")
    p.add_argument("--ledger", action="store_true", help="emit the sign ledgers and base subsets used")
    p.add_argument("--check-relations", action="store_true", help="check the three-term Plücker relations first")

    p = verbs.add_parser("measure", parents=[common], help="Le-tableau -> Plücker vector")
    p.add_argument("--check-det", action="store_true", help="cross-check against the determinant formula")
    p.add_argument("--limit-subsets", metavar="SUBSETS", help="only these subsets, e.g. '1,2;1,3'")

    p = verbs.add_parser("roundtrip", parents=[common], help="Le-tableau -> measure -> coords, diff report")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for a random tableau when given a diagram")
    p.add_argument("--max-entry", type=int, default=DEFAULT_MAX_ENTRY)

    verbs.add_parser("base", parents=[common], help="Le-diagram -> totally positive base")

    p = verbs.add_parser("laurent", parents=[common], help="Le-diagram + J -> Laurent expansion of P_J")
    p.add_argument("--subset", required=True, help="the subset J, e.g. '1,3'")

    p = verbs.add_parser("enumerate", parents=[common], help="all Le-diagrams in a k x (n-k) rectangle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--summary", action="store_true", help="per-dimension counts instead of diagrams")
    p.add_argument("--allow-large", action="store_true", help="lift the n guard")

    p = verbs.add_parser("matroid", parents=[common], help="Le-diagram -> its matroid")
    p.add_argument("--limit-subsets", metavar="SUBSETS", help="only test these subsets, e.g. '1,2;1,3'")

    p = verbs.add_parser("docs", help="print the help page of a verb")
    p.add_argument("topic", choices=[v for v in VERBS if v != "docs"])
    p.add_argument("--html", action="store_true", help="render the page as HTML")
    return parser


def read_document(args):
    if args.json is not None:
        return loads(args.json)
    if args.input:
        try:
            with open(args.input, 'r', encoding='utf-8') as f:
                return loads(f.read())
        except OSError as e:
            raise SchemaError(f"Cannot read input file {args.input}: {str(e)}")
    return loads(sys.stdin.read())


def read_point(document) -> PluckerVector:
    if is_matrix_document(document):
        return plucker_from_matrix(matrix_from_json(document))
    return plucker_from_json(document)


def _check_relations(vector: PluckerVector) -> None:
    violations = three_term_relations(vector)
    if violations:
        first = violations[0]
        raise MathInputError(
            f"{len(violations)} three-term Plücker relations fail, first at S={first['S']}, abcd={first['abcd']}",
            code="plucker_relations",
        )


def cmd_locate(args) -> dict:
    vector = read_point(read_document(args))
    if args.check_relations:
        _check_relations(vector)
    diagram = locate(vector, verify_support=args.verify_support)
    return {
        "diagram": diagram_to_json(diagram),
        "I": list(diagram.boundary.base),
        "lambda": list(diagram.shape.rows),
        "dimension": diagram.dimension,
    }


def cmd_coords(args) -> dict:
    vector = read_point(read_document(args))
    if args.check_relations:
        _check_relations(vector)
    diagram = locate(vector)
    graph = build_graph(diagram)
    results = {}
    if args.method in ("mobius", "both"):
        results["mobius"] = coords_mobius(vector, diagram, check=False, graph=graph)
    if args.method in ("minimal", "both"):
        results["minimal"] = coords_minimal(
            vector, diagram, check=False, use_multiprocessing=args.parallel, max_workers=args.workers, graph=graph
        )
    if args.method == "both" and results["mobius"] != results["minimal"]:
        raise InvariantError("Moebius and minimal coordinates disagree")
    tableau = next(iter(results.values()))
    verify_coordinates(vector, tableau, graph, args.parallel, args.workers)
    document = {"tableau": tableau_to_json(tableau), "method": args.method}
    if args.ledger:
        document["base"] = [list(J) for J in tp_base(diagram, graph)]
        document["ledger"] = [
            {"box": list(box), "eps": [[c.row, c.col, e] for c, e in eps.items()]}
            for box, eps in epsilon_ledger(diagram, graph).items()
        ]
        document["variables"] = {
            method.value: len(plucker_variables(diagram, method, graph)) for method in CoordsMethod
        }
    return document


def cmd_measure(args) -> dict:
    tableau = tableau_from_json(read_document(args))
    subsets = None
    if args.limit_subsets:
        subsets = parse_subset_list(args.limit_subsets, n=tableau.shape.n, k=tableau.shape.k)
    vector = measure(tableau, subsets=subsets, use_multiprocessing=args.parallel, max_workers=args.workers)
    if args.check_det and measure_det(tableau, subsets=subsets) != vector:
        raise InvariantError("Path-family and determinant measurements disagree")
    return plucker_to_json(vector)


def cmd_roundtrip(args) -> dict:
    document = read_document(args)
    if not isinstance(document, dict):
        raise SchemaError("Expected a tableau or diagram JSON object")
    generated = "entries" not in document
    if generated:
        diagram = diagram_from_json(document)
        tableau = random_tableau(diagram, random.Random(args.seed), args.max_entry)
    else:
        tableau = tableau_from_json(document)
        diagram = tableau.diagram

    graph = build_graph(diagram)
    vector = measure(tableau, use_multiprocessing=args.parallel, max_workers=args.workers, graph=graph)
    located = locate(vector)
    if located != diagram:
        raise InvariantError(f"Measured point located in {diagram_to_json(located)}, expected {diagram_to_json(diagram)}")
    diffs = []
    for name, recovered in (
        ("mobius", coords_mobius(vector, diagram, check=False, graph=graph)),
        ("minimal", coords_minimal(vector, diagram, check=False, graph=graph)),
    ):
        for box in diagram.plus_boxes:
            if recovered[box] != tableau[box]:
                diffs.append((name, box, abs(recovered[box] - tableau[box])))
    if diffs:
        worst = max(d[2] for d in diffs)
        raise InvariantError(
            f"Roundtrip failed at {[(name, list(box)) for name, box, _ in diffs[:5]]}; max_abs_diff {format_rational(worst)}"
        )
    report = {"ok": True, "max_abs_diff": "0"}
    if generated:
        report["tableau"] = tableau_to_json(tableau)
    return report


def cmd_base(args) -> dict:
    diagram = diagram_from_json(read_document(args))
    return {
        "boxes": sorted_boxes(diagram.plus),
        "base": [list(J) for J in tp_base(diagram)],
    }


def cmd_laurent(args) -> dict:
    diagram = diagram_from_json(read_document(args))
    subset = parse_subset_key(args.subset, n=diagram.n, k=diagram.k)
    polynomial = laurent_expand(diagram, subset)
    return {
        "J": list(subset),
        "base": [list(J) for J in polynomial.base],
        "terms": [{"coef": coef, "exps": list(exps)} for coef, exps in polynomial.terms],
    }


def cmd_enumerate(args) -> dict:
    if args.summary:
        counts = count_by_dimension(args.k, args.n, args.allow_large)
        return {
            "k": args.k,
            "n": args.n,
            "count": sum(counts.values()),
            "by_dimension": {str(d): c for d, c in counts.items()},
        }
    diagrams = []
    for diagram in enumerate_le_diagrams(args.k, args.n, args.allow_large):
        document = diagram_to_json(diagram)
        document["dimension"] = diagram.dimension
        diagrams.append(document)
    return {"k": args.k, "n": args.n, "count": len(diagrams), "diagrams": diagrams}


def cmd_matroid(args) -> dict:
    diagram = diagram_from_json(read_document(args))
    subsets = None
    if args.limit_subsets:
        subsets = parse_subset_list(args.limit_subsets, n=diagram.n, k=diagram.k)
    bases = matroid_of(diagram, subsets=subsets, use_multiprocessing=args.parallel, max_workers=args.workers)
    return {"k": diagram.k, "n": diagram.n, "bases": [list(J) for J in sorted(bases)]}


def cmd_docs(args) -> dict:
    logger.debug(f"Help pages available: {available_verbs()}")
    return help_document(args.topic, html=args.html)


COMMANDS = {
    "locate": cmd_locate,
    "coords": cmd_coords,
    "measure": cmd_measure,
    "roundtrip": cmd_roundtrip,
    "base": cmd_base,
    "laurent": cmd_laurent,
    "enumerate": cmd_enumerate,
    "matroid": cmd_matroid,
    "docs": cmd_docs,
}


def run_command(argv=None, stdout=None) -> int:
    """
    Run one verb and write its JSON document.

    Returns:
        int: The exit status.
    """
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    configure_logging(getattr(args, "verbose", False), getattr(args, "log_file", None))
    logger.debug(f"Running verb '{args.verb}'")
    try:
        document = COMMANDS[args.verb](args)
    except GrknError as e:
        logger.error(f"{args.verb} failed ({e.code}): {e.message}")
        stdout.write(dumps({"error": e.to_dict()}) + "\n")
        return e.exit_status
    stdout.write(dumps(document) + "\n")
    return 0


def main(argv=None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
