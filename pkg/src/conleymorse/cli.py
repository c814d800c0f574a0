"""Command-line interface: ``conleymorse validate|analyze|index``.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 validation error, 4 internal
assertion (a bug).
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .analysis import analyze
from .conley import conley_index, isolated_invariant_failure
from .exceptions import ConleyMorseError, InternalAssertion, ParseError
from .generate import random_field

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conleymorse", description="Morse decompositions of multivector fields")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--space", required=True, help="space file (poset format unless --simplicial)")
        p.add_argument("--simplicial", action="store_true", help="space file lists simplices")
        p.add_argument("--mvf", help="multivector field file")
        p.add_argument("--seed", type=int, help="use a random field with this seed instead of --mvf")
        p.add_argument("--bias", type=float, default=0.5, help="stopping bias of the random field")

    common(sub.add_parser("validate", help="check a multivector field"))
    a = sub.add_parser("analyze", help="full Morse decomposition report as JSON")
    common(a)
    a.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")
    a.add_argument("--dot", metavar="PATH", help="also write the Conley-Morse graph as DOT")
    a.add_argument("--no-restrict", action="store_true", help="fail instead of restricting to the invariant part")
    i = sub.add_parser("index", help="Conley index of a set of cells")
    common(i)
    i.add_argument("--cells", required=True, help="comma separated cell names (may be empty)")
    return parser


def _load(args):
    space = io.read_space(args.space, simplicial=args.simplicial)
    if args.seed is not None:
        if args.mvf:
            raise _Usage("--mvf and --seed are mutually exclusive")
        return random_field(space, args.seed, args.bias)
    if not args.mvf:
        raise _Usage("one of --mvf or --seed is required")
    return io.read_field(space, args.mvf)


class _Usage(Exception):
    pass


def cmd_validate(args, out) -> int:
    field = _load(args)
    print(f"valid: {len(field.space)} cells, {len(field)} multivectors, {field.n_critical} critical", file=out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    field = _load(args)
    report = analyze(field, restrict=not args.no_restrict)
    text = report.to_json()
    if args.json:
        io.write_text(args.json, text)
    else:
        out.write(text)
    if args.dot:
        io.write_text(args.dot, report.graph.to_dot())
    return EXIT_OK


def cmd_index(args, out) -> int:
    field = _load(args)
    cells = field.space.cellset(io.names_in(field.space, io.cell_list(args.cells)))
    reason = isolated_invariant_failure(field, cells)
    if reason is not None:
        print(f"error: not an isolated invariant set: {reason}", file=sys.stderr)
        return EXIT_INVALID
    sig = conley_index(field, cells)
    print(f"betti: {list(sig.betti)}", file=out)
    print(f"torsion: {[list(t) for t in sig.torsion]}", file=out)
    print(f"polynomial: {sig.poincare()}", file=out)
    return EXIT_OK


COMMANDS = {"validate": cmd_validate, "analyze": cmd_analyze, "index": cmd_index}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalAssertion as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ConleyMorseError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
