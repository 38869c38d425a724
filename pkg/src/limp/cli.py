"""Command-line driver.

Exit codes: 0 success / derivable, 1 negative answer (not a subtype, not
disjoint, ill-typed program), 2 internal fault or failing suite, 64 usage.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import harness
from .checker import TypeCheckError, elaborate_program
from .disjoint import alg_disjoint
from .oracle import SearchBudget
from .parser import ParseError, parse_program, parse_type
from .subtyping import InternalDivergence, derive
from .syntax import erase_type, pretty_print
from .target import RuntimeFault, TargetTypeError, eval_term, normalize, show_value, target_typecheck

EXIT_OK, EXIT_NO, EXIT_FAULT, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in --json output")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-size", type=_positive, default=4)
    budget.add_argument("--fuel", type=_positive, default=8)
    budget.add_argument("--universe-size", type=_positive, default=4)
    budget.add_argument("--max-coercions", type=_positive, default=8)

    parser = _Parser(prog="limp", description="Intersection subtyping with modus ponens.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("check", parents=[common], help="type-check a .lim file")
    p.add_argument("file")
    p = sub.add_parser("run", parents=[common], help="type-check and evaluate a .lim file")
    p.add_argument("file")
    p = sub.add_parser("sub", parents=[common], help="decide A <: B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--trace", action="store_true")
    p = sub.add_parser("disjoint", parents=[common], help="decide A * B")
    p.add_argument("a")
    p.add_argument("b")
    sub.add_parser("compare", parents=[common, budget], help="algorithm vs declarative oracle")
    sub.add_parser("coherence", parents=[common, budget], help="observational coherence scan")
    p = sub.add_parser("corpus", parents=[common], help="run every .lim file in a directory")
    p.add_argument("dir")
    return parser


class _Out:
    def __init__(self, stdout, stderr, json_mode: bool):
        self.stdout = stdout
        self.stderr = stderr
        self.json_mode = json_mode
        self.color = os.environ.get("LIMP_COLOR", "0") == "1"

    def verdict(self, text: str, good: bool) -> str:
        if not self.color:
            return text
        return f"\x1b[{32 if good else 31}m{text}\x1b[0m"

    def line(self, text: str = "") -> None:
        if not self.json_mode:
            print(text, file=self.stdout)

    def err(self, text: str) -> None:
        print(text, file=self.stderr)


def _emit_json(out: _Out, doc: dict, started: float, timing: bool) -> None:
    if timing:
        doc["timing_seconds"] = round(time.perf_counter() - started, 6)
    print(harness.to_json(doc), file=out.stdout)


def _load(path: str):
    return parse_program(Path(path).read_text(encoding="utf-8"))


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    old_out, old_err = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = stdout, stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    finally:
        sys.stdout, sys.stderr = old_out, old_err
    out = _Out(stdout, stderr, args.json)
    started = time.perf_counter()
    doc = {"command": args.command}
    try:
        code = _dispatch(args, out, doc)
    except (InternalDivergence, RuntimeFault, TargetTypeError) as err:
        out.err(f"internal fault: {type(err).__name__}: {err}")
        doc.update(verdict="fault", error=f"{type(err).__name__}: {err}")
        code = EXIT_FAULT
    except OSError as err:
        out.err(f"error: {err}")
        doc.update(verdict="fault", error=str(err))
        code = EXIT_FAULT
    if args.json:
        _emit_json(out, doc, started, args.timing)
    return code


def _budget(args) -> SearchBudget:
    return SearchBudget(args.fuel, args.universe_size, args.max_coercions)


def _dispatch(args, out: _Out, doc: dict) -> int:
    cmd = args.command
    if cmd in ("check", "run"):
        doc["inputs"] = [args.file]
        try:
            program = _load(args.file)
            ty, term = elaborate_program(program)
        except (ParseError, TypeCheckError) as err:
            out.err(f"{args.file}:{err}" if isinstance(err, ParseError) else f"{args.file}: {err}")
            doc.update(verdict="error", error=f"{type(err).__name__}: {err}")
            return EXIT_NO
        got = target_typecheck({}, term)
        if got != erase_type(ty):
            raise TargetTypeError(f"elaboration has type {pretty_print(got)}, expected {pretty_print(erase_type(ty))}")
        doc.update(type=pretty_print(ty), elaboration=pretty_print(term))
        if cmd == "check":
            doc["verdict"] = "ok"
            out.line(f"{pretty_print(ty)}")
            return EXIT_OK
        value = show_value(eval_term(term))
        doc.update(verdict="ok", value=value)
        out.line(f"{value} : {pretty_print(ty)}")
        return EXIT_OK

    if cmd in ("sub", "disjoint"):
        doc["inputs"] = [args.a, args.b]
        try:
            a, b = parse_type(args.a), parse_type(args.b)
        except ParseError as err:
            out.err(f"error: {err}")
            doc.update(verdict="error", error=str(err))
            return EXIT_USAGE
        if cmd == "disjoint":
            verdict = alg_disjoint(a, b)
            if verdict:
                doc["verdict"] = "disjoint"
                out.line(out.verdict("disjoint", True))
                return EXIT_OK
            doc.update(verdict="not disjoint", reason=verdict.reason)
            out.line(out.verdict(f"not disjoint: {verdict.reason}", False))
            return EXIT_NO
        d = derive(a, b)
        if args.trace:
            doc["trace"] = [
                {
                    "rule": s.rule,
                    "left": pretty_print(s.state.left),
                    "right": pretty_print(s.state.right),
                    "queue": [pretty_print(t) for t in s.state.queue],
                    "depth": s.state.depth,
                    "measure": list(s.measure.components),
                }
                for s in d.trace
            ]
        if not d.ok:
            doc["verdict"] = "not a subtype"
            out.line(out.verdict("not a subtype", False))
            return EXIT_NO
        coercion = pretty_print(normalize(d.coercion.term))
        doc.update(verdict="subtype", coercion=coercion)
        out.line(out.verdict("subtype", True))
        out.line(f"coercion: {coercion}")
        if args.trace:
            for step in d.trace:
                out.line(str(step))
        return EXIT_OK

    if cmd == "compare":
        doc["inputs"] = {"max_size": args.max_size, "fuel": args.fuel, "universe_size": args.universe_size}
        report = harness.compare_subtyping(args.max_size, _budget(args))
        doc.update(verdict="pass" if report.passed else "fail", report=report.to_dict())
        out.line(report.summary())
        for row in report.disagreement_list:
            out.line("disagreement: " + " | ".join(row))
        return EXIT_OK if report.passed else EXIT_FAULT

    if cmd == "coherence":
        doc["inputs"] = {
            "max_size": args.max_size,
            "fuel": args.fuel,
            "universe_size": args.universe_size,
            "max_coercions": args.max_coercions,
        }
        report = harness.coherence_scan(args.max_size, _budget(args))
        doc.update(verdict="pass" if report.passed else "fail", report=report.to_dict())
        out.line(report.summary())
        for m in report.mismatches:
            out.line(f"mismatch: {m.source} <: {m.target} at {m.path}: {m.values[0]} vs {m.values[1]}")
        return EXIT_OK if report.passed else EXIT_FAULT

    if cmd == "corpus":
        doc["inputs"] = [args.dir]
        report = harness.run_corpus(args.dir)
        doc.update(verdict="pass" if report.passed else "fail", report=report.to_dict())
        for r in report.results:
            detail = f"{r.value} : {r.type}" if r.status == "ok" else r.error
            out.line(f"{r.status:15} {r.path}  {detail}")
        out.line(report.summary())
        return EXIT_OK if report.passed else EXIT_FAULT

    raise AssertionError(cmd)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
