"""Command-line front end: ``lidcolor <subcommand> ...``.

Exit codes: 0 success, 1 domain or input error, 2 usage error, 3 when
``verify`` finds the coloring is not a lid-coloring.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .closed_form import FAMILIES, FamilySpec, evaluate
from .constructions.family import construct_family, spec_graph
from .constructions.generic import ConstructionError
from .constructions.tiles import MiningError
from .graph import Graph, InvalidParameterError, ProductLabeling, cartesian_product, tensor_product
from .solver import DEFAULT_BUDGET, ResourceLimitError, chi_lid_exact
from .verify import Coloring, InvalidColoringError, lid_report

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_NOT_LID = 0, 1, 2, 3

# cosmetic; cycles beyond nine colors
PALETTE = (
    "#e41a1c",
    "#377eb8",
    "#4daf4a",
    "#984ea3",
    "#ff7f00",
    "#ffff33",
    "#a65628",
    "#f781bf",
    "#999999",
)


class InputError(Exception):
    """Unreadable or malformed input file."""


class UsageError(Exception):
    pass


# -- grids ---------------------------------------------------------------------------


def render_grid(coloring: Coloring, labeling: ProductLabeling) -> str:
    """Colors as a ``rows x cols`` matrix, one row per line."""
    if len(coloring) != labeling.rows * labeling.cols:
        raise InvalidParameterError(
            f"coloring has {len(coloring)} entries, labeling is {labeling.rows} x {labeling.cols}"
        )
    lines = []
    for u in range(labeling.rows):
        lines.append(" ".join(str(coloring[labeling.flat(u, v)]) for v in range(labeling.cols)))
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> tuple[Coloring, ProductLabeling]:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise InvalidParameterError("empty grid")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InvalidParameterError(f"grid line {i + 1} has {len(row)} entries, expected {width}")
    try:
        values = [int(c) for row in rows for c in row]
    except ValueError as exc:
        raise InvalidParameterError(f"grid entry is not an integer: {exc}") from None
    return Coloring(values), ProductLabeling(len(rows), width)


def to_dot(graph: Graph, coloring: Coloring | None = None) -> str:
    lines = ["graph G {", "  node [style=filled];"]
    for v in range(graph.n):
        if coloring is None:
            lines.append(f"  {v};")
        else:
            c = coloring[v]
            lines.append(f'  {v} [label="{v}:{c}", fillcolor="{PALETTE[(c - 1) % len(PALETTE)]}"];')
    for u, v in graph.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- input ----------------------------------------------------------------------------


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_graph(path: str, indexing: int) -> Graph:
    data = _read_json(path)
    try:
        return Graph.from_dict(data, indexing=indexing)
    except (InvalidParameterError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_coloring(path: str) -> Coloring:
    data = _read_json(path)
    try:
        return Coloring.from_dict(data)
    except (InvalidColoringError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _family_spec(args) -> FamilySpec:
    arity = FAMILIES[args.family][1]
    if arity == 1 and args.n is not None:
        raise UsageError(f"family {args.family} takes only -m")
    if arity == 2 and args.n is None:
        raise UsageError(f"family {args.family} needs -n")
    return FamilySpec(args.family, args.m, args.n)


# -- subcommands ----------------------------------------------------------------------


def cmd_compute(args) -> int:
    spec = _family_spec(args)
    value, case = evaluate(spec.family, spec.m, spec.n)
    print(value)
    print(f"case: {case}")
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = _family_spec(args)
    if args.grid and spec.n is None:
        raise UsageError("--grid needs a product family")
    coloring = construct_family(spec)
    # construct_family certifies; check once more before anything is written
    if not lid_report(spec_graph(spec), coloring).is_lid:
        raise ConstructionError("construction failed verification")
    if args.grid:
        _write(render_grid(coloring, ProductLabeling(spec.m, spec.n)), args.out)
    else:
        _write(coloring.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    graph = _load_graph(args.graph, args.indexing)
    coloring = _load_coloring(args.coloring)
    if len(coloring) != graph.n:
        raise InputError(f"{args.coloring}: {len(coloring)} colors for a graph on {graph.n} vertices")
    report = lid_report(graph, coloring)
    if args.report == "json":
        print(json.dumps(report.to_dict()))
    else:
        print(f"proper: {report.proper}")
        print(f"lid: {report.is_lid}")
        print(f"colors: {report.colors_used}")
        for u, v in report.improper_edges:
            print(f"improper edge: {u} {v}")
        for u, v in report.bad_edges:
            print(f"bad edge: {u} {v}")
    return EXIT_OK if report.is_lid else EXIT_NOT_LID


def cmd_exact(args) -> int:
    graph = _load_graph(args.graph, args.indexing)
    jobs = 1 if args.deterministic else args.jobs
    result = chi_lid_exact(graph, budget=args.budget, max_k=args.max_k, jobs=jobs)
    print(result.value)
    if args.certificate:
        Path(args.certificate).write_text(result.certificate.to_json() + "\n")
    else:
        print(result.certificate.to_json())
    return EXIT_OK


def cmd_product(args) -> int:
    g = _load_graph(args.g, args.indexing)
    h = _load_graph(args.h, args.indexing)
    op = cartesian_product if args.op == "cartesian" else tensor_product
    product, _ = op(g, h)
    _write(product.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    if args.format == "grid":
        if args.coloring is None or args.rows is None:
            raise UsageError("--format grid needs --coloring and --rows")
    graph = _load_graph(args.graph, args.indexing)
    coloring = _load_coloring(args.coloring) if args.coloring else None
    if coloring is not None and len(coloring) != graph.n:
        raise InputError(f"{args.coloring}: {len(coloring)} colors for a graph on {graph.n} vertices")
    if args.format == "dot":
        text = to_dot(graph, coloring)
    elif args.format == "json":
        data = {"graph": graph.to_dict()}
        if coloring is not None:
            data["coloring"] = coloring.to_dict()
        text = json.dumps(data) + "\n"
    else:
        if graph.n % args.rows:
            raise InvalidParameterError(f"{graph.n} vertices do not fill {args.rows} rows")
        text = render_grid(coloring, ProductLabeling(args.rows, graph.n // args.rows))
    _write(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lidcolor", description="Locally identifying colorings of graphs.")
    parser.add_argument("--indexing", type=int, choices=(0, 1), default=0, help="vertex numbering of input graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(p, need_n):
        p.add_argument("--family", required=True, choices=sorted(FAMILIES))
        p.add_argument("-m", type=int, required=True)
        p.add_argument("-n", type=int, required=need_n)

    p = sub.add_parser("compute", help="closed-form lid-chromatic number of a family")
    family_args(p, False)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("construct", help="optimal verified coloring of a family instance")
    family_args(p, False)
    p.add_argument("--out")
    p.add_argument("--grid", action="store_true", help="write a color grid instead of JSON")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check that a coloring is a lid-coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact lid-chromatic number by search")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-k", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--deterministic", action="store_true", help="single process search")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--certificate", help="write the certificate coloring here")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("product", help="Cartesian or tensor product of two graphs")
    p.add_argument("--op", required=True, choices=("cartesian", "tensor"))
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("export", help="write a graph (and coloring) as DOT, JSON or a grid")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring")
    p.add_argument("--format", required=True, choices=("dot", "json", "grid"))
    p.add_argument("--rows", type=int, help="grid rows (product graphs are row-major)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"lidcolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        InputError,
        InvalidParameterError,
        InvalidColoringError,
        ConstructionError,
        MiningError,
        ResourceLimitError,
    ) as exc:
        print(f"lidcolor: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
