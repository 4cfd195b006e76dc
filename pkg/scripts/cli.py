#!/usr/bin/env python3
"""Command-line interface for friezelab.

Results go to stdout in the chosen format; logging goes to stderr. Exit codes: 0 on
success, 1 on a domain error or a failed identity, 2 on a usage error.
"""

import argparse
import csv
import io
import json
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.exact import LaurentPoly, Mat2, parse_rational  # noqa: E402
from src.frieze import (  # noqa: E402
    classify_friezes,
    frieze_csv_rows,
    frieze_from_quiddity,
    frieze_from_triangulation,
    matching_frieze,
    render_frieze,
    verify_frieze,
)
from src.markoff import (  # noqa: E402
    LatticeVector,
    M_num,
    M_poly,
    herriot_distance,
    herriot_triples,
    hurwitz_expand,
    is_markoff_triple,
    markoff_numbers,
    rosenberger_orbit,
    scott_matrices,
    scott_sequence,
    topograph_expand,
    unique_triples,
)
from src.matchings import (  # noqa: E402
    build_graph,
    delete_black,
    formal_weights,
    kuo_check,
    kuo_terms,
    matching_sum,
)
from src.polygon import (  # noqa: E402
    Triangulation,
    catalan,
    ear_counts,
    enumerate_triangulations,
    flip_graph,
)
from src.schemas import (  # noqa: E402
    ExchangeNodeModel,
    FriezeTableModel,
    LaminationModel,
    MatrixModel,
    ReportModel,
    SnakeReportModel,
    SymbolicReportModel,
    TriangulationModel,
    VariantEnumerationModel,
    VariantTableModel,
    encode_value,
)
from src.snake import (  # noqa: E402
    ab_to_lr,
    code_to_ab,
    dual_snake_frieze,
    lr_paths_count,
    lr_product,
    model_values,
)
from src.tropical import (  # noqa: E402
    HEXAGON_LAMINATION,
    Lamination,
    lamination_dual_tree,
    random_lamination,
    tree_leaf_distances,
    tropical_table,
    verify_tropical,
)
from src.utils.config import Config  # noqa: E402
from src.utils.errors import FriezeLabError  # noqa: E402
from src.variant import (  # noqa: E402
    DoubleZigzag,
    render_variant,
    variant_csv_rows,
    variant_enumerate,
    variant_enumerate_auto,
    variant_from_double_zigzag,
    variant_symbolic,
    variant_verify,
)

logger = logging.getLogger("friezelab.cli")

SNAKE_MODELS = [
    "recurrence",
    "ab_product",
    "lr_paths",
    "strip_tilings",
    "dual_paths",
    "matchings",
]

HEXAGON_LAMINATION_ROWS = [
    [3, 1, 1, 0, 2, 1],
    [2, 2, 1, 2, 3, 2],
    [1, 3, 2, 1, 3, 2],
    [2, 3, 2, 2, 2, 1],
    [1, 3, 1, 1, 0, 2],
]


@dataclass
class Rendered:
    """One result in every output format."""

    text: str
    payload: Any
    rows: Optional[List[List[str]]] = None
    ok: bool = True


# -- argument parsing helpers ---------------------------------------------------------


def parse_ints(text: str) -> List[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {text!r}")


def parse_pair(text: str) -> Tuple[int, int]:
    values = parse_ints(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"Expected a pair like 1,4, got {text!r}")
    return values[0], values[1]


def parse_quadruple(text: str) -> Tuple[int, int, int, int]:
    values = parse_ints(text)
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"Expected four vertices like 1,2,3,4, got {text!r}")
    return values[0], values[1], values[2], values[3]


def load_weights(path: str) -> Dict[Tuple[int, int], Any]:
    """Read ``{"i,j": value}`` from a JSON file.

    Values parse as rationals when they can; anything else names a formal variable.
    """
    with open(path, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    numeric: Dict[Tuple[int, int], Any] = {}
    named: Dict[Tuple[int, int], str] = {}
    for key, value in raw.items():
        i, j = parse_pair(key)
        edge = (min(i, j), max(i, j))
        try:
            numeric[edge] = parse_rational(str(value))
        except ValueError:
            named[edge] = str(value)
    names = tuple(sorted(set(named.values())))
    for edge, name in named.items():
        numeric[edge] = LaurentPoly.variable(name, names)
    return numeric


def triangulation_from_args(args: argparse.Namespace) -> Triangulation:
    if not args.diagonals:
        return Triangulation.fan(args.n)
    return Triangulation.from_pairs(args.n, args.diagonals)


def edge_weights(args: argparse.Namespace, T: Triangulation) -> Dict[Tuple[int, int], Any]:
    if args.weights:
        weights: Dict[Tuple[int, int], Any] = {edge: 1 for edge in T.sides()}
        weights.update(load_weights(args.weights))
        return weights
    if args.formal:
        return formal_weights(T)
    return {edge: 1 for edge in T.edges()}


# -- output -----------------------------------------------------------------------------


def jsonable(value: Any) -> Any:
    """Models become dicts, numbers and Laurent polynomials their JSON encodings."""
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, str)) or value is None:
        return value
    return jsonable(encode_value(value))


def emit(result: Rendered, fmt: str, stream=None) -> None:
    """Write a result to ``stream`` (stdout by default) in ascii, json or csv."""
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(jsonable(result.payload), indent=2) + "\n")
    elif fmt == "csv":
        rows = result.rows
        if rows is None:
            rows = [[line] for line in result.text.splitlines()]
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(rows)
        stream.write(buffer.getvalue())
    else:
        stream.write(result.text + "\n")


# -- subcommands ------------------------------------------------------------------------


def cmd_frieze(args: argparse.Namespace) -> Rendered:
    if args.action == "from-quiddity":
        F = frieze_from_quiddity(parse_ints(args.values))
    else:
        T = triangulation_from_args(args)
        F = frieze_from_triangulation(T, edge_weights(args, T))
    report = verify_frieze(F)
    text = render_frieze(F, periods=args.periods)
    if not report.ok:
        text += "\n" + "\n".join(f"not a frieze: {failure}" for failure in report.failures)
    payload = {
        "frieze": FriezeTableModel.from_table(F),
        "report": ReportModel.from_frieze_report(report),
    }
    return Rendered(text, payload, frieze_csv_rows(F), ok=report.ok)


def cmd_triangulations(args: argparse.Namespace) -> Rendered:
    triangulations = enumerate_triangulations(args.n)
    lines = [f"{len(triangulations)} triangulations (Catalan {catalan(args.n - 2)})"]
    rows = [["index", "diagonals", "quiddity"]]
    for k, T in enumerate(triangulations, start=1):
        diagonals = " ".join(f"{i}-{j}" for i, j in T.sorted_diagonals())
        quiddity = ",".join(str(a) for a in ear_counts(T))
        lines.append(f"{k:4d}  {diagonals:<30} {quiddity}")
        rows.append([str(k), diagonals, quiddity])
    payload: Dict[str, Any] = {
        "n": args.n,
        "count": len(triangulations),
        "triangulations": [TriangulationModel.from_triangulation(T) for T in triangulations],
    }
    if args.flips:
        graph = flip_graph(args.n)
        edges = graph.number_of_edges()
        lines.append(f"flip graph: {graph.number_of_nodes()} nodes, {edges} edges")
        payload["flip_edges"] = edges
    return Rendered("\n".join(lines), payload, rows)


def cmd_matchings(args: argparse.Namespace) -> Rendered:
    T = triangulation_from_args(args)
    G = build_graph(T, edge_weights(args, T))
    if args.kuo:
        terms = kuo_terms(G, *args.kuo)
        holds = kuo_check(G, *args.kuo)
        lines = [f"m({pair[0]},{pair[1]}) = {value}" for pair, value in terms.items()]
        lines.append(f"condensation {'holds' if holds else 'FAILS'}")
        payload = {"terms": terms, "holds": holds}
        rows = [[pair, str(value)] for pair, value in terms.items()]
        return Rendered("\n".join(lines), payload, rows, ok=holds)
    i, j = args.pair
    value = matching_sum(delete_black(G, i, j))
    payload = {"pair": [i, j], "value": value}
    return Rendered(f"m({i},{j}) = {value}", payload, [[str(i), str(j), str(value)]])


def cmd_snake(args: argparse.Namespace) -> Rendered:
    if args.dual_frieze:
        result = dual_snake_frieze(args.dual_frieze)
        lines = [render_frieze(result.frieze, periods=1)]
        for point, (entry, paths) in sorted(result.comparisons.items()):
            lines.append(f"{point}: entry {entry}, paths {paths}")
        payload = {
            "word": result.word,
            "mirrored": result.mirrored,
            "ok": result.ok,
            "comparisons": [
                {"point": list(p), "entry": e, "paths": c}
                for p, (e, c) in sorted(result.comparisons.items())
            ],
        }
        return Rendered("\n".join(lines), payload, ok=result.ok)
    if args.lr:
        matrix = lr_product(args.lr)
        count = lr_paths_count(args.lr)
        text = f"paths = {count}\nproduct = {list(matrix.rows())}"
        payload = {"word": args.lr, "paths": count, "product": MatrixModel.from_mat2(matrix)}
        return Rendered(text, payload, [[args.lr, str(count)]])
    values = model_values(args.code)
    if args.model != "all":
        values = {args.model: values[args.model]}
    report = SnakeReportModel.from_values(args.code, values)
    ab = code_to_ab(args.code)
    lines = [f"code {args.code}  AB {ab}  LR {ab_to_lr(ab)}"]
    lines += [f"{name:<14} {value}" for name, value in values.items()]
    rows = [[name, str(value)] for name, value in values.items()]
    return Rendered("\n".join(lines), report, rows, ok=report.agree)


def _exchange_tree(args: argparse.Namespace) -> Rendered:
    if args.action == "rosenberger":
        tree = rosenberger_orbit(parse_ints(args.coeffs), args.depth)
        ok = all(node.flags.get("integral") for node in tree.walk())
    elif args.action == "hurwitz":
        tree = hurwitz_expand(depth=args.depth, formal=args.formal)
        ok = all(node.flags.get("laurent", True) for node in tree.walk())
    else:
        tree = topograph_expand(None if args.formal else (1, 1, 1), args.depth)
        ok = all(node.flags.get("equation", True) for node in tree.walk())
    lines = [f"{'  ' * node.depth}{', '.join(str(v) for v in node.values)}" for node in tree.walk()]
    rows = [[str(node.depth)] + [str(v) for v in node.values] for node in tree.walk()]
    if args.action in ("tree", "topograph") and not args.formal:
        triples = unique_triples(tree)
        valid = all(is_markoff_triple(t) for t in triples)
        lines.append(f"{len(triples)} distinct triples, all Markoff: {valid}")
    return Rendered("\n".join(lines), ExchangeNodeModel.from_node(tree), rows, ok=ok)


def _herriot(args: argparse.Namespace) -> Rendered:
    points = [parse_pair(p) for p in args.points]
    if len(points) == 1:
        d = herriot_distance(points[0])
        return Rendered(f"d((0, 0), {points[0]}) = {d}", {"distance": d}, [[str(d)]])
    triangles = herriot_triples(points)
    lines, rows, payload = [], [], []
    for t in triangles:
        lines.append(f"{t.points} degrees {t.degrees} distances {t.triple} relation {t.relation}")
        rows.append([f"{x},{y}" for x, y in t.points] + [str(v) for v in t.triple])
        payload.append({"points": t.points, "distances": t.triple, "relation": t.relation})
    ok = all(t.relation is not False for t in triangles)
    return Rendered("\n".join(lines), payload, rows, ok=ok)


def cmd_markoff(args: argparse.Namespace) -> Rendered:
    if args.action == "scott":
        terms = scott_sequence(args.count)
        text = " ".join(str(t) for t in terms)
        payload: Dict[str, Any] = {"sequence": terms}
        if args.matrices:
            matrices = scott_matrices(args.count)
            text += "\n" + "\n".join(str(list(m.rows())) for m in matrices)
            payload["matrices"] = [MatrixModel.from_mat2(m) for m in matrices]
        return Rendered(text, payload, [[str(t)] for t in terms])
    if args.action == "numbers":
        numbers = markoff_numbers(args.limit)
        return Rendered(" ".join(map(str, numbers)), numbers, [[str(v)] for v in numbers])
    if args.action in ("value", "vector"):
        u = LatticeVector.parse(args.vector)
        value: Any = M_poly(u) if args.poly else M_num(u)
        payload = {"vector": [u.p, u.q], "value": value}
        return Rendered(f"M{u} = {value}", payload, [[str(u.p), str(u.q), str(value)]])
    if args.action == "herriot":
        return _herriot(args)
    return _exchange_tree(args)


def cmd_tropical(args: argparse.Namespace) -> Rendered:
    if args.action == "example":
        L = HEXAGON_LAMINATION
    elif args.action == "table":
        L = LaminationModel.model_validate_json(Path(args.lamination).read_text()).to_lamination()
    elif args.action == "random":
        L = random_lamination(args.n, args.arcs, random.Random(args.seed))
    else:
        pairs = [parse_pair(p) for p in args.pairs]
        weights = parse_ints(args.arc_weights) if args.arc_weights else None
        L = Lamination.from_pairs(args.n, pairs, weights)
    table = tropical_table(L)
    report = verify_tropical(table)
    tree_ok = tree_leaf_distances(lamination_dual_tree(L)).entries == table.entries
    ok = report.ok and tree_ok
    text = render_frieze(table, periods=args.periods)
    text += (
        f"\ntropical relation {report.relation_ok}, four-point {report.four_point_ok}, "
        f"tree metric {tree_ok}"
    )
    payload = {
        "lamination": LaminationModel.from_lamination(L),
        "rows": [table.row(r) for r in range(table.n - 1)],
        "ok": ok,
        "failures": report.failures,
    }
    return Rendered(text, payload, frieze_csv_rows(table), ok=ok)


def cmd_variant(args: argparse.Namespace) -> Rendered:
    if args.action == "symbolic":
        report = variant_symbolic(args.n)
        text = (
            f"n={args.n}: laurent {report.laurent}, positive {report.positive}, "
            f"period {2 * args.n} {report.period_ok}, glide {report.glide_ok} (experimental)"
        )
        if report.failure:
            text += f"\n{report.failure}"
        return Rendered(text, SymbolicReportModel.from_report(report))
    if args.action == "table":
        values = [parse_pair(p) for p in args.values] if args.values else None
        V = variant_from_double_zigzag(DoubleZigzag.straight(args.n, values))
        report = variant_verify(V)
        text = render_variant(V) + f"\nperiod {report.minimal_period}, glide {report.glide_ok}"
        payload = {
            "table": VariantTableModel.from_table(V),
            "report": ReportModel.from_variant_report(report),
        }
        return Rendered(text, payload, variant_csv_rows(V), ok=report.ok)
    if args.bound == "auto":
        result = variant_enumerate_auto(args.n, mirror=args.mirror, workers=args.workers)
    else:
        bound = int(args.bound)
        result = variant_enumerate(args.n, bound, mirror=args.mirror, workers=args.workers)
    lines = [f"n={args.n}: {result.count} tables at bound {result.bound} (not a rigorous count)"]
    for bound, count in result.metadata.get("bounds", []):
        lines.append(f"  bound {bound}: {count}")
    if "stable" in result.metadata:
        lines.append(f"  stable under doubling: {result.metadata['stable']}")
    if args.tables:
        lines += [""] + [render_variant(V) + "\n" for V in result.tables]
    model = VariantEnumerationModel.from_enumeration(result, with_tables=args.tables)
    rows = [[str(args.n), str(result.bound), str(result.count)]]
    return Rendered("\n".join(lines).rstrip(), model, rows)


def cmd_classify(args: argparse.Namespace) -> Rendered:
    result = classify_friezes(args.n)
    lines = [f"{result.count} friezes of period {args.n} (Catalan {catalan(args.n - 2)})"]
    if result.agrees is not None:
        lines.append(f"direct search agrees: {result.agrees}")
    lines += [",".join(map(str, q)) for q in result.quiddities]
    payload = {
        "n": args.n,
        "count": result.count,
        "agrees": result.agrees,
        "quiddities": [list(q) for q in result.quiddities],
    }
    rows = [[str(a) for a in q] for q in result.quiddities]
    return Rendered("\n".join(lines), payload, rows, ok=result.agrees is not False)


# -- identity suite -------------------------------------------------------------------


def _hexagon() -> Triangulation:
    return Triangulation.from_pairs(6, [(2, 6), (2, 5), (3, 5)])


def check_hexagon_frieze() -> bool:
    F = frieze_from_quiddity([1, 3, 2, 1, 3, 2])
    m = matching_frieze(_hexagon())
    rows_ok = F.row(2) == [5, 1, 2, 5, 1, 2] and m.entry(1, 4) == 5
    return verify_frieze(F).is_positive_integral and rows_ok


def check_weighted_hexagon() -> bool:
    T = _hexagon()
    weights = formal_weights(T, names={(2, 6): "x", (2, 5): "y", (3, 5): "z"})
    x, y, z = weights[(2, 6)], weights[(2, 5)], weights[(3, 5)]
    W = matching_sum(delete_black(build_graph(T, weights), 1, 4))
    M = frieze_from_triangulation(T, weights).entry(1, 4)
    return W == 1 + 2 * y + y * y + x * z and M == W / (x * y * z)


def check_catalan() -> bool:
    counts = all(len(enumerate_triangulations(n)) == catalan(n - 2) for n in range(3, 9))
    return counts and classify_friezes(7).agrees is True


def check_models_agree() -> bool:
    for T in enumerate_triangulations(6):
        if frieze_from_quiddity(ear_counts(T)).entries != matching_frieze(T).entries:
            return False
    return True


def check_snake() -> bool:
    return set(model_values("2212").values()) == {13} and set(model_values("1121").values()) == {19}


def check_kuo() -> bool:
    return kuo_check(build_graph(_hexagon()), 1, 2, 3, 4)


def check_scott() -> bool:
    expected = [Mat2(5, 2, 2, 1), Mat2(29, 12, 12, 5), Mat2(433, 179, 179, 74)]
    sequence_ok = scott_sequence(7) == [1, 1, 2, 5, 29, 433, 37666]
    return sequence_ok and scott_matrices(6)[3:] == expected


def check_markoff() -> bool:
    tree = topograph_expand((1, 1, 1), 6)
    triples_ok = all(is_markoff_triple(t) for t in unique_triples(tree))
    vectors_ok = M_num(LatticeVector(2, -1)) == 5 and M_num(LatticeVector(3, -2)) == 29
    return triples_ok and vectors_ok


def check_herriot() -> bool:
    O, A, B, C = (0, 0), (1, 1), (2, 1), (3, 2)
    distances = [
        herriot_distance(B, A),
        herriot_distance(A, O),
        herriot_distance(C, B),
        herriot_distance(B, O),
        herriot_distance(C, A),
        herriot_distance(C, O),
    ]
    relations = [t.relation for t in herriot_triples([O, A, C])] + [
        t.relation for t in herriot_triples([O, B, C])
    ]
    return distances == [1, 1, 2, 3, 3, 11] and relations == [True, True]


def check_tropical() -> bool:
    table = tropical_table(HEXAGON_LAMINATION)
    rows = [table.row(r) for r in range(5)]
    return rows == HEXAGON_LAMINATION_ROWS and verify_tropical(table).ok


def check_variant() -> bool:
    V = variant_from_double_zigzag(DoubleZigzag(7, (1, 0, 1), ((1, 1),) * 3))
    return variant_verify(V).is_positive_integral and variant_enumerate(6, 12).count == 5


IDENTITIES: List[Tuple[str, Callable[[], bool]]] = [
    ("hexagon frieze and matchings", check_hexagon_frieze),
    ("weighted hexagon Laurent polynomial", check_weighted_hexagon),
    ("Catalan counts and classification", check_catalan),
    ("quiddity and matching friezes agree", check_models_agree),
    ("snake models", check_snake),
    ("Kuo condensation", check_kuo),
    ("Scott sequence and matrices", check_scott),
    ("Markoff topograph and snakes", check_markoff),
    ("lattice distances and relations", check_herriot),
    ("tropical frieze of a lamination", check_tropical),
    ("variant recurrence", check_variant),
]


def cmd_verify(args: argparse.Namespace) -> Rendered:
    results = []
    for name, check in IDENTITIES:
        try:
            passed = check()
        except FriezeLabError as exc:
            logger.error(f"{name}: {exc}")
            passed = False
        results.append((name, passed))
    lines = [f"{'PASS' if passed else 'FAIL'}  {name}" for name, passed in results]
    payload = {name: passed for name, passed in results}
    rows = [[name, str(passed)] for name, passed in results]
    return Rendered("\n".join(lines), payload, rows, ok=all(p for _, p in results))


# -- parser -----------------------------------------------------------------------------


def _add_triangulation_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="Polygon size")
    parser.add_argument(
        "--diagonals",
        type=parse_pair,
        nargs="*",
        default=[],
        help="Diagonals as i,j pairs (default: fan from vertex 1)",
    )
    parser.add_argument("--weights", help="JSON file mapping 'i,j' to a weight or variable name")
    parser.add_argument("--formal", action="store_true", help="One variable per diagonal")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="friezelab",
        description="Exact computations with frieze patterns and their relatives",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  friezelab frieze from-quiddity 1,3,2,1,3,2
  friezelab snake --code 2212 --model all
  friezelab markoff scott --count 7
  friezelab variant enumerate --n 7 --bound auto
        """,
    )
    parser.add_argument(
        "--format",
        default=Config.DEFAULT_FORMAT,
        choices=Config.OUTPUT_FORMATS,
        help=f"Output format (default: {Config.DEFAULT_FORMAT})",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    commands = parser.add_subparsers(dest="command", required=True)

    frieze = commands.add_parser("frieze", help="Build and check a frieze pattern")
    frieze_actions = frieze.add_subparsers(dest="action", required=True)
    quiddity = frieze_actions.add_parser("from-quiddity", help="Top-down from a quiddity row")
    quiddity.add_argument("values", help="Comma-separated quiddity row")
    quiddity.add_argument("--periods", type=int, default=2)
    quiddity.set_defaults(handler=cmd_frieze)
    from_t = frieze_actions.add_parser("from-triangulation", help="Weighted matchings of T")
    _add_triangulation_args(from_t)
    from_t.add_argument("--periods", type=int, default=2)
    from_t.set_defaults(handler=cmd_frieze)

    triangulations = commands.add_parser("triangulations", help="Enumerate triangulations")
    triangulations.add_argument("--n", type=int, required=True)
    triangulations.add_argument("--flips", action="store_true", help="Report the flip graph")
    triangulations.set_defaults(handler=cmd_triangulations)

    matchings = commands.add_parser("matchings", help="Matching sums of the graph of T")
    _add_triangulation_args(matchings)
    matchings.add_argument(
        "--pair", type=parse_pair, default=(1, 3), help="Black vertices to delete"
    )
    matchings.add_argument("--kuo", type=parse_quadruple, help="Check condensation at a,b,c,d")
    matchings.set_defaults(handler=cmd_matchings)

    snake = commands.add_parser("snake", help="Snake graph counting models")
    snake.add_argument("--code", default="2212", help="Snake code over {1,2}")
    snake.add_argument("--model", default="all", choices=["all"] + SNAKE_MODELS)
    snake.add_argument("--lr", help="LR word: count paths and multiply L/R matrices")
    snake.add_argument("--dual-frieze", help="LR word: compare a frieze with snake paths")
    snake.set_defaults(handler=cmd_snake)

    markoff = commands.add_parser("markoff", help="Markoff numbers and relatives")
    markoff_actions = markoff.add_subparsers(dest="action", required=True)
    scott = markoff_actions.add_parser("scott", help="Scott's sequence")
    scott.add_argument("--count", type=int, default=7)
    scott.add_argument("--matrices", action="store_true")
    numbers = markoff_actions.add_parser("numbers", help="Markoff numbers up to a limit")
    numbers.add_argument("--limit", type=int, default=1000)
    vector = markoff_actions.add_parser(
        "value", aliases=["vector"], help="Snake matchings of a lattice vector"
    )
    vector.add_argument("--vector", required=True, help="Coordinates p,q")
    vector.add_argument("--poly", action="store_true", help="Weighted Laurent polynomial")
    topograph = markoff_actions.add_parser(
        "tree", aliases=["topograph"], help="Markoff exchange tree"
    )
    topograph.add_argument("--depth", type=int, default=3)
    topograph.add_argument("--formal", action="store_true")
    herriot = markoff_actions.add_parser("herriot", help="Distances in the isosceles tiling")
    herriot.add_argument(
        "--vector", "--points", dest="points", nargs="+", required=True, help="Lattice points x,y"
    )
    rosenberger = markoff_actions.add_parser("rosenberger", help="ax^2 + by^2 + cz^2 orbits")
    rosenberger.add_argument("--coeffs", default="1,1,1")
    rosenberger.add_argument("--depth", type=int, default=3)
    hurwitz = markoff_actions.add_parser("hurwitz", help="Four-variable Hurwitz orbit")
    hurwitz.add_argument("--depth", type=int, default=2)
    hurwitz.add_argument("--formal", action="store_true")
    for sub in (scott, numbers, vector, topograph, herriot, rosenberger, hurwitz):
        sub.set_defaults(handler=cmd_markoff)

    tropical = commands.add_parser("tropical", help="Tropical friezes from laminations")
    tropical_actions = tropical.add_subparsers(dest="action", required=True)
    example = tropical_actions.add_parser("example", help="A weighted hexagon lamination")
    from_json = tropical_actions.add_parser("table", help="Lamination read from a JSON file")
    from_json.add_argument("--lamination", required=True, help="JSON file with n and arcs")
    lamination = tropical_actions.add_parser("lamination", help="Arcs given as gap pairs")
    lamination.add_argument("--n", type=int, required=True)
    lamination.add_argument("--pairs", nargs="+", required=True, help="Arcs as g1,g2")
    lamination.add_argument("--arc-weights", help="Comma-separated arc weights")
    rand = tropical_actions.add_parser("random", help="Random non-crossing lamination")
    rand.add_argument("--n", type=int, default=6)
    rand.add_argument("--arcs", type=int, default=3)
    rand.add_argument("--seed", type=int, default=Config.RANDOM_SEED)
    for sub in (example, from_json, lamination, rand):
        sub.add_argument("--periods", type=int, default=1)
        sub.set_defaults(handler=cmd_tropical)

    variant = commands.add_parser("variant", help="The variant recurrence")
    variant_actions = variant.add_subparsers(dest="action", required=True)
    enumerate_ = variant_actions.add_parser("enumerate", help="Count positive integer tables")
    enumerate_.add_argument("--n", type=int, required=True)
    enumerate_.add_argument("--bound", default="auto", help="Zig-zag value bound or 'auto'")
    enumerate_.add_argument("--mirror", action="store_true", help="Quotient by mirror images")
    enumerate_.add_argument("--workers", type=int, default=1)
    enumerate_.add_argument("--tables", action="store_true", help="Print every table")
    symbolic = variant_actions.add_parser("symbolic", help="Formal double zig-zag")
    symbolic.add_argument("--n", type=int, required=True)
    table = variant_actions.add_parser("table", help="Table from a straight double zig-zag")
    table.add_argument("--n", type=int, required=True)
    table.add_argument("--values", nargs="*", help="One left,right pair per middle row")
    for sub in (enumerate_, symbolic, table):
        sub.set_defaults(handler=cmd_variant)

    classify = commands.add_parser("classify", help="Positive integer friezes of period n")
    classify.add_argument("--n", type=int, required=True)
    classify.set_defaults(handler=cmd_classify)

    verify = commands.add_parser("verify", help="Run the identity suite")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    # Configure logging
    default_level = getattr(logging, Config.LOG_LEVEL, logging.WARNING)
    log_level = logging.DEBUG if args.verbose else default_level
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        result = args.handler(args)
    except (
        FriezeLabError,
        ValueError,
        ArithmeticError,
        OSError,
        argparse.ArgumentTypeError,
    ) as e:
        print(f"Error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback

            traceback.print_exc()
        return 1

    emit(result, args.format)
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
