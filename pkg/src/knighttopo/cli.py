"""Command-line front end.

Exit codes: 0 success, 1 no solution / predicate false / disagreement,
2 budget exhausted, 3 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .boardgraph import BoardSpec, Topology
from .errors import BudgetExceeded as BudgetError
from .errors import KnightTopoError, Unsupported
from .lift import ClassTarget, classify
from .render import RenderMode, RenderOptions, render
from .search import Budget, BudgetExceeded, Exhausted, Found, Mode, SearchProblem, count_tours, find_tour
from .serialize import DocumentError, TourDocument
from .theorems import Method, Source, verify_range
from .tour import Tour

EXIT_OK, EXIT_NONE, EXIT_BUDGET, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which here means "budget"
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _int_range(text: str) -> range:
    """``3`` or ``1..6`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def _cell(text: str) -> tuple[int, int]:
    try:
        m, n = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN, got {text!r}")
    return m, n


def _target(text: str) -> ClassTarget:
    try:
        return ClassTarget.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _board_args(p: argparse.ArgumentParser, *, required: bool = True) -> None:
    p.add_argument("--topology", choices=[t.value for t in Topology], required=required)
    p.add_argument("-m", type=int, required=required, help="columns")
    p.add_argument("-n", type=int, required=required, help="rows")
    p.add_argument("--target", type=_target, default=ClassTarget.parse("any"),
                   help="identity|generator|longitude|any|exact:K|exact:P,Q")


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=Budget().max_nodes)
    p.add_argument("--budget-ms", type=int, default=Budget().max_wall_ms)


def _output_args(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
    p.add_argument("--out", type=Path, help="write here instead of standard output")
    p.add_argument("--format", choices=list(formats), default=formats[0])


def _spec(args) -> BoardSpec:
    try:
        return BoardSpec(Topology(args.topology), args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))


def _budget(args) -> Budget:
    try:
        return Budget(args.budget_nodes, args.budget_ms)
    except ValueError as exc:
        raise UsageError(str(exc))


def _emit(args, payload) -> None:
    data = payload if isinstance(payload, bytes) else payload.encode("utf-8")
    if args.out is not None:
        args.out.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _emit_tour(args, tour: Tour) -> None:
    if args.format == "json":
        _emit(args, TourDocument.of(tour).to_bytes())
    elif args.format == "svg":
        _emit(args, render(tour, RenderOptions(RenderMode.LIFT_SVG)))
    else:
        _emit(args, render(tour, RenderOptions(RenderMode.BOARD_ASCII)))


def _read_tour(path: str) -> Tour:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return TourDocument.from_bytes(data).tour


def _note(message: str) -> None:
    print(message, file=sys.stderr)


# -- subcommands ---------------------------------------------------------------------


def cmd_solve(args) -> int:
    problem = SearchProblem(_spec(args), args.target, mode=Mode.FIND_ONE)
    outcome = find_tour(problem, _budget(args))
    if isinstance(outcome, Found):
        _emit_tour(args, outcome.tour)
        return EXIT_OK
    if isinstance(outcome, BudgetExceeded):
        _note(f"budget exhausted after {outcome.nodes_used} nodes, {outcome.ms_used} ms")
        return EXIT_BUDGET
    _note(f"no {args.target} tour on {problem.spec} ({outcome.nodes} nodes)")
    return EXIT_NONE


def cmd_classify(args) -> int:
    tour = _read_tour(args.document)
    if not (tour.closed and tour.spec.is_surface):
        raise UsageError("only closed tours on a cylinder or torus have a class")
    print(classify(tour.spec, tour))
    return EXIT_OK


def cmd_count(args) -> int:
    problem = SearchProblem(_spec(args), args.target, mode=Mode.COUNT_ALL)
    outcome = count_tours(problem, _budget(args))
    if isinstance(outcome, BudgetExceeded):
        _note(f"budget exhausted after {outcome.nodes_used} nodes, {outcome.ms_used} ms")
        return EXIT_BUDGET
    assert isinstance(outcome, Exhausted)
    print(outcome.count)
    return EXIT_OK


def cmd_construct(args) -> int:
    from . import construct as cons

    budget = _budget(args)
    try:
        if args.family is not None:
            if args.m is None or args.n is None:
                raise UsageError("--family needs -m and -n")
            tour = cons.build(cons.Family(args.family), (args.m, args.n), budget).tour
        else:
            if args.topology is None or args.m is None or args.n is None:
                raise UsageError("give --family, or --topology with -m and -n")
            tour = cons.construct(_spec(args), args.target, budget)
    except Unsupported as exc:
        _note(str(exc))
        return EXIT_NONE
    _emit_tour(args, tour)
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = verify_range(
        Source(args.source),
        args.m_range,
        args.n_range,
        Method(args.method),
        _budget(args),
        extra=args.extra,
        jobs=args.jobs,
    )
    lines = []
    for r in rows:
        spec = r.claim.spec
        if args.format == "json":
            lines.append(json.dumps({
                "source": r.claim.source.value,
                "m": spec.m,
                "n": spec.n,
                "predicted": r.claim.predicted,
                "evidence": r.describe(),
                "agree": r.agree,
                "ms": r.ms,
            }, separators=(",", ":")))
        else:
            mark = {True: "ok", False: "DISAGREE", None: "skip"}[r.agree]
            lines.append(f"{r.claim.source.value:<9} {spec.m:>3} {spec.n:>3}  "
                         f"{'yes' if r.claim.predicted else 'no':<4} {mark:<8} {r.describe()}  {r.ms} ms")
    _emit(args, "\n".join(lines) + "\n")
    if any(r.agree is False for r in rows):
        return EXIT_NONE
    if any(r.agree is None and "budget" in r.describe() for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_render(args) -> int:
    tour = _read_tour(args.document)
    opts = RenderOptions(RenderMode(args.mode), not args.no_domains, args.cell_px)
    _emit(args, render(tour, opts))
    return EXIT_OK


def cmd_fixtures(args) -> int:
    from .construct import DEFAULT_STORE, FixtureStore, rebuild_fixtures
    from .construct.store import FixtureCorrupt

    store = FixtureStore(args.dir) if args.dir else DEFAULT_STORE
    if args.action == "rebuild":
        manifest = rebuild_fixtures(store)
        for name, digest in manifest.items():
            print(f"{digest}  {name}")
        return EXIT_OK
    bad = 0
    for name in store.manifest():
        try:
            store._read(name)
        except FixtureCorrupt as exc:
            _note(str(exc))
            bad += 1
    print(f"{len(store.manifest()) - bad} fixtures verified, {bad} corrupt")
    return EXIT_NONE if bad else EXIT_OK


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .construct import Family

    parser = _Parser(prog="knighttopo", description="Knight's tours on rectangles, cylinders and tori.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="search for a tour of a given class")
    _board_args(p)
    _budget_args(p)
    _output_args(p, ("json", "text", "svg"))
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="print the homotopy class of a tour document")
    p.add_argument("document", help="tour document path, or - for standard input")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="count the undirected tours of a class")
    _board_args(p)
    _budget_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("construct", help="build a tour by the inductive families")
    _board_args(p, required=False)
    p.add_argument("--family", choices=[f.value for f in Family])
    _budget_args(p)
    _output_args(p, ("json", "text", "svg"))
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a characterization against evidence over a range")
    p.add_argument("--source", choices=[s.value for s in Source], required=True)
    p.add_argument("--m-range", type=_int_range, required=True, help="N or LO..HI")
    p.add_argument("--n-range", type=_int_range, required=True, help="N or LO..HI")
    p.add_argument("--extra", type=_cell, nargs="*", default=[], help="additional MxN cells")
    p.add_argument("--method", choices=[v.value for v in Method], default=Method.CONSTRUCT_THEN_SEARCH.value)
    p.add_argument("--jobs", type=int, default=1)
    _budget_args(p)
    _output_args(p, ("text", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a tour document")
    p.add_argument("document", help="tour document path, or - for standard input")
    p.add_argument("--mode", choices=[v.value for v in RenderMode], default=RenderMode.BOARD_ASCII.value)
    p.add_argument("--no-domains", action="store_true", help="omit fundamental-domain rulings")
    p.add_argument("--cell-px", type=int, default=24)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("fixtures", help="manage frozen base cases")
    p.add_argument("action", choices=["rebuild", "check"])
    p.add_argument("--dir", type=Path, help="fixture directory (default: the packaged one)")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DocumentError, ValueError, OSError) as exc:
        _note(f"knighttopo: {exc}")
        return EXIT_INVALID
    except BudgetError as exc:
        _note(f"knighttopo: {exc}")
        return EXIT_BUDGET
    except KnightTopoError as exc:
        _note(f"knighttopo: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
