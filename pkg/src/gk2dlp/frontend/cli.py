"""Command line interface.

Exit codes: 0 success (also when there are no models), 1 selftest failure,
2 parse or usage error, 3 solver or adapter error, 4 enumeration limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import (
    AdapterError,
    EnumerationLimitError,
    ParseError,
    SolverError,
    UnsupportedFragmentError,
)
from ..translator import CNF_MODES
from . import fairdiv, pipeline
from .emit import emit_asp
from .parsing import LANGUAGES, format_default_theory

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SOLVER, EXIT_LIMIT = 0, 1, 2, 3, 4


def _build_parser():
    parser = argparse.ArgumentParser(prog="gk2dlp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def source_args(p):
        p.add_argument("--from", dest="source", choices=LANGUAGES, required=True)
        p.add_argument("--in", dest="input", required=True, help="input file ('-' for stdin)")

    p = sub.add_parser("translate", help="write the disjunctive program and its name map")
    source_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--map", dest="map_file")
    p.add_argument("--cnf", choices=CNF_MODES, default="distributive")
    p.add_argument("--project", action="store_true", help="append #show/#project directives")

    p = sub.add_parser("solve", help="list the models computed through the translation")
    source_args(p)
    p.add_argument("--cnf", choices=CNF_MODES, default="distributive")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--solver", choices=["internal"], default="internal")
    group.add_argument("--solver-cmd", help=f"external solver command, e.g. {pipeline.DEFAULT_EXTERNAL!r}")

    p = sub.add_parser("oracle", help="list the models found by exhaustive search")
    source_args(p)

    p = sub.add_parser("bench", help="benchmark instance generators")
    bench = p.add_subparsers(dest="bench", required=True)
    fd = bench.add_parser("fair-division", help="random fair-division default theory")
    fd.add_argument("--agents", type=int, required=True)
    fd.add_argument("--goods", type=int, required=True)
    fd.add_argument("--seed", type=int, required=True)
    fd.add_argument("--out", required=True)
    fd.add_argument("--emit-instance")

    sub.add_parser("selftest", help="check the reference examples through every path")
    return parser


def _read(path):
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _translate(args):
    out = pipeline.translate(args.source, _read(args.input), args.cnf)
    program, mapping = emit_asp(out, project=args.project)
    Path(args.out).write_text(program)
    if args.map_file:
        Path(args.map_file).write_text(mapping)
    return EXIT_OK


def _solve(args):
    solver = args.solver_cmd or "internal"
    req = pipeline.PipelineRequest(args.source, _read(args.input), args.cnf, solver)
    sys.stdout.write(pipeline.solve(req).listing())
    return EXIT_OK


def _oracle(args):
    sys.stdout.write(pipeline.oracle(args.source, _read(args.input)).listing())
    return EXIT_OK


def _bench(args):
    if args.agents < 1 or args.goods < 1:
        raise ValueError("--agents and --goods must be positive")
    inst, dt = fairdiv.gen_fair_division(args.agents, args.goods, args.seed)
    Path(args.out).write_text(format_default_theory(dt))
    if args.emit_instance:
        Path(args.emit_instance).write_text(inst.to_json() + "\n")
    print(f"{len(fairdiv.solutions_brute_force(inst))} solutions")
    return EXIT_OK


SELFTEST_CASES = [
    ("~A(~p) -> K(p)", [["p"]]),
    ("~A(~p) -> K(p)\nK(~p)", [["~p"]]),
    ("A(p) -> K(p)", [[], ["p"]]),
    ("~A(p) -> K(p)", []),
]


def _selftest(args):
    failures = 0
    for text, expected in SELFTEST_CASES:
        label = text.replace("\n", "; ")
        results = {
            "oracle": pipeline.oracle("gk", text).descriptors,
            "internal": pipeline.solve(pipeline.PipelineRequest("gk", text)).descriptors,
            "structural": pipeline.solve(pipeline.PipelineRequest("gk", text, "structural")).descriptors,
        }
        for path, descriptors in results.items():
            got = sorted(sorted(str(f) for f in d.k_true) for d in descriptors)
            ok = got == expected
            failures += not ok
            print(f"{'PASS' if ok else 'FAIL'} {path:<10} {label}: {got}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


COMMANDS = {
    "translate": _translate,
    "solve": _solve,
    "oracle": _oracle,
    "bench": _bench,
    "selftest": _selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (ParseError, UnsupportedFragmentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SolverError, AdapterError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except EnumerationLimitError as exc:
        print(f"enumeration limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
