"""Command-line front end.

Exit codes: 0 yes/success, 1 no, 2 usage or input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Tuple

from .collapse import (NotACore, apply_collapsing, build_collapse_structure, chen_reduction,
                       qcsp_via_collapsibility)
from .formats import (FormatError, dump_operation, dump_sentence, dump_structure,
                      parse_sentence, parse_structure)
from .logic import normalize_alternation
from .microcosm import F_SYMBOL, backward_reduce, forward_reduce, microcosm_structure
from .polymorphism import find_nu
from .solvers import BudgetExceeded, csp_eval, qcsp_eval
from .structures import core_of, is_isomorphic
from .verify import SUITES, run_suite

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str, parse):
    try:
        return parse(_read(path))
    except FormatError as exc:
        raise FormatError(exc.message, exc.line, exc.column, source=path) from None


def _emit(text: str, out: Optional[str]) -> str:
    if out is None or out == "-":
        return text
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return ""


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcsp", description="Finite-model CSP/QCSP workbench.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide a sentence on a structure")
    p.add_argument("--structure", required=True)
    p.add_argument("--sentence", required=True)
    p.add_argument("--mode", choices=("game", "csp", "collapse"), default="game")
    p.add_argument("--k", type=int, default=2, help="surviving universals for --mode collapse")
    p.add_argument("--elem", type=int, default=0, help="collapse element for --mode collapse")
    p.add_argument("--normalize", action="store_true",
                   help="pad the prefix to strict forall/exists alternation first")
    p.add_argument("--budget", type=int, default=None, help="game node budget")

    p = sub.add_parser("core", help="print the core of a structure")
    p.add_argument("--structure", required=True)
    p.add_argument("-o", "--output")

    p = sub.add_parser("iso", help="test two structures for isomorphism")
    p.add_argument("--structure", required=True)
    p.add_argument("--other", required=True)

    p = sub.add_parser("nu", help="search for a near-unanimity polymorphism")
    p.add_argument("--structure", required=True)
    p.add_argument("--arity", type=int, default=3)
    p.add_argument("-o", "--output")

    p = sub.add_parser("collapse", help="emit a collapsing, its CSP instance, or D(survivors)")
    p.add_argument("--structure", required=True)
    p.add_argument("--sentence", required=True)
    p.add_argument("--survivors", default="", help="comma-separated surviving universals")
    p.add_argument("--elem", type=int, default=0)
    p.add_argument("--emit", choices=("collapsed", "chen", "structure"), default="collapsed")
    p.add_argument("-o", "--output")

    p = sub.add_parser("microcosm", help="c-valid structure and the two reductions")
    msub = p.add_subparsers(dest="direction", required=True, parser_class=_Parser)
    for direction in ("build", "forward", "backward"):
        m = msub.add_parser(direction)
        if direction == "build":
            m.add_argument("--structure", required=True)
        else:
            m.add_argument("--sentence", required=True)
            m.add_argument("--structure", help="structure whose signature the sentence uses")
        m.add_argument("--f-symbol", default=F_SYMBOL)
        m.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="run an oracle cross-check suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _yes_no(answer: bool) -> Tuple[int, str]:
    return (EXIT_YES, "yes\n") if answer else (EXIT_NO, "no\n")


def _dispatch(args) -> Tuple[int, str]:
    cmd = args.command
    if cmd == "solve":
        b = _load(args.structure, parse_structure)
        phi = _load(args.sentence, parse_sentence)
        if args.normalize and not phi.is_bottom:
            phi = normalize_alternation(phi)
        if args.mode == "game":
            return _yes_no(qcsp_eval(b, phi, budget=args.budget))
        if args.mode == "csp":
            return _yes_no(csp_eval(b, phi))
        return _yes_no(qcsp_via_collapsibility(b, phi, args.k, args.elem))
    if cmd == "core":
        b = _load(args.structure, parse_structure)
        return EXIT_YES, _emit(dump_structure(core_of(b)), args.output)
    if cmd == "iso":
        return _yes_no(is_isomorphic(_load(args.structure, parse_structure),
                                     _load(args.other, parse_structure)))
    if cmd == "nu":
        b = _load(args.structure, parse_structure)
        table = find_nu(b, args.arity)
        if table is None:
            return EXIT_NO, f"none (arity {args.arity} searched)\n"
        return EXIT_YES, _emit(dump_operation(table), args.output)
    if cmd == "collapse":
        b = _load(args.structure, parse_structure)
        phi = _load(args.sentence, parse_sentence)
        survivors = [s for s in args.survivors.split(",") if s]
        if args.emit == "structure":
            text = dump_structure(build_collapse_structure(b, phi, survivors, args.elem))
        else:
            collapsed = apply_collapsing(phi, survivors, args.elem)
            if args.emit == "chen":
                collapsed = chen_reduction(collapsed, b.size)
            text = dump_sentence(collapsed)
        return EXIT_YES, _emit(text, args.output)
    if cmd == "microcosm":
        if args.direction == "build":
            b = _load(args.structure, parse_structure)
            return EXIT_YES, _emit(dump_structure(microcosm_structure(b, args.f_symbol)),
                                   args.output)
        phi = _load(args.sentence, parse_sentence)
        signature = _load(args.structure, parse_structure).signature if args.structure else None
        if args.direction == "forward":
            psi = forward_reduce(phi, args.f_symbol, signature)
        else:
            if signature is not None and args.f_symbol not in signature:
                signature = signature.extend(args.f_symbol, 2)
            psi = backward_reduce(phi, args.f_symbol, signature)
        return EXIT_YES, _emit(dump_sentence(psi), args.output)
    report = run_suite(args.suite, args.samples, args.seed)
    return (EXIT_YES if report.ok else EXIT_NO), report.render() + "\n"


def run_command(argv: List[str]) -> Tuple[int, str]:
    """Run one command; returns (exit code, text for stdout)."""
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except UsageError as exc:
        return EXIT_ERROR, f"usage error: {exc}\n"
    except SystemExit as exc:  # --help
        return (exc.code or 0), ""
    except BudgetExceeded as exc:
        return EXIT_BUDGET, f"budget exceeded: {exc}\n"
    except OverflowError as exc:
        return EXIT_BUDGET, f"budget exceeded: {exc}\n"
    except (FormatError, NotACore, ValueError, KeyError, OSError) as exc:
        return EXIT_ERROR, f"error: {exc}\n"


def main(argv: Optional[List[str]] = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == EXIT_ERROR else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
