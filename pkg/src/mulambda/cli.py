"""Command-line driver.

Exit codes: 0 success, 1 program error, 2 usage error, 3 corpus mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from mulambda import interp, ir, syntax
from mulambda._deep import call_deep
from mulambda.corpus import diff_corpus
from mulambda.errors import MuLambdaError
from mulambda.ports import bind_ports
from mulambda.rewrite import DEFAULT_STEP_BUDGET, DagContext, reduce, reduce_once

EXIT_OK, EXIT_PROGRAM, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def parse_literal(text: str) -> ir.Node:
    """Literal accepted by ``--bind``: an integer, ``#t``, ``#f`` or ``()``."""
    try:
        sexpr = syntax.read_sexpr(text)
    except MuLambdaError as exc:
        raise UsageError(f"bad literal {text!r}") from exc
    match sexpr:
        case syntax.IntAtom(value):
            return ir.Integer(value)
        case syntax.BoolAtom(value):
            return ir.TrueConst() if value else ir.FalseConst()
        case syntax.ListForm(()):
            return ir.Unit()
    raise UsageError(f"bad literal {text!r}: expected integer, #t, #f or ()")


def parse_bindings(specs) -> dict[str, ir.Node]:
    bindings = {}
    for spec in specs:
        name, sep, literal = spec.partition("=")
        if not sep or not name:
            raise UsageError(f"bad binding {spec!r}: expected name=literal")
        if name in bindings:
            raise UsageError(f"port {name} bound twice")
        bindings[name] = parse_literal(literal)
    return bindings


def _write(path, text):
    Path(path).write_text(text, encoding="utf-8")


def cmd_parse(args, out):
    node = syntax.parse_text(_read(args.file))
    out.write(syntax.syntax_to_dot(node) if args.dot else repr(node) + "\n")


def cmd_run(args, out):
    value = interp.run(_read(args.file), args.fuel)
    out.write(interp.show(value) + "\n")


def cmd_compile(args, out):
    node = ir.compile_text(_read(args.file))
    out.write(ir.dump(node) + "\n")
    if args.dot:
        _write(args.dot, ir.node_to_dot(node))


def run_reduce(text, *, once=False, bindings=None, budget=DEFAULT_STEP_BUDGET, on_step=None):
    """Compile, close ports, reduce. Returns ``(result, context)``."""
    ctx = DagContext(budget)
    node = ir.compile_text(text)
    if bindings:
        node = bind_ports(ctx, node, bindings)
    if once:
        return reduce_once(ctx, node), ctx
    if on_step is not None:
        on_step(node)
    return reduce(ctx, node, on_step), ctx


def cmd_reduce(args, out):
    bindings = parse_bindings(args.bind)
    steps = []
    on_step = steps.append if args.trace else None
    result, _ = run_reduce(_read(args.file), once=args.once, bindings=bindings,
                           budget=args.budget, on_step=on_step)
    out.write(ir.show(result) + "\n")
    if args.dot:
        _write(args.dot, ir.node_to_dot(result))
    if args.trace:
        if not steps or steps[-1] is not result:
            steps.append(result)
        trace_dir = Path(args.trace)
        trace_dir.mkdir(parents=True, exist_ok=True)
        for i, node in enumerate(steps):
            _write(trace_dir / f"step-{i:03d}.dot", ir.node_to_dot(node, f"step{i}"))


def cmd_diff(args, out):
    report = diff_corpus(args.corpus, args.fuel)
    for result in report.results:
        out.write(result.line() + "\n")
    out.write(report.summary() + "\n")
    return EXIT_MISMATCH if report.failed else EXIT_OK


def repl(stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    interactive = stdin.isatty()
    last = None
    while True:
        if interactive:
            out.write("mu> ")
            out.flush()
        line = stdin.readline()
        if not line:
            return EXIT_OK
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        try:
            if line == ":q":
                return EXIT_OK
            if line.startswith(":dot"):
                path = line[len(":dot"):].strip()
                if last is None or not path:
                    out.write("error: nothing to save\n" if path else "error: usage :dot PATH\n")
                else:
                    _write(path, ir.node_to_dot(last))
                continue
            if line.startswith(":i "):
                out.write(interp.show(call_deep(interp.run, line[3:])) + "\n")
                continue
            last, _ = call_deep(run_reduce, line)
            out.write(ir.show(last) + "\n")
        except MuLambdaError as exc:
            out.write(f"error: {exc}\n")
        except OSError as exc:
            out.write(f"error: {exc}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mulambda", description="Self-optimizing graph reducer for a small lambda calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="print the syntax tree")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="print DOT instead of the tree")

    p = sub.add_parser("run", help="evaluate with the reference interpreter")
    p.add_argument("file")
    p.add_argument("--fuel", type=int, default=interp.DEFAULT_FUEL)

    p = sub.add_parser("compile", help="compile to the value graph")
    p.add_argument("file")
    p.add_argument("--dot", metavar="PATH")

    p = sub.add_parser("reduce", help="compile and reduce")
    p.add_argument("file")
    p.add_argument("--once", action="store_true", help="single reduction step")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--trace", metavar="DIR", help="write one DOT file per fixpoint iteration")
    p.add_argument("--bind", action="append", default=[], metavar="NAME=LITERAL")
    p.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET, help="maximum rule firings")

    p = sub.add_parser("diff", help="check the reducer against the interpreter on a corpus")
    p.add_argument("corpus")
    p.add_argument("--fuel", type=int, default=interp.DEFAULT_FUEL)

    sub.add_parser("repl", help="interactive loop")
    return parser


COMMANDS = {"parse": cmd_parse, "run": cmd_run, "compile": cmd_compile,
            "reduce": cmd_reduce, "diff": cmd_diff}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "repl":
        return repl(out=out)
    if getattr(args, "fuel", 0) < 0:
        err.write("error: fuel must be non-negative\n")
        return EXIT_USAGE
    try:
        code = call_deep(COMMANDS[args.command], args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except MuLambdaError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PROGRAM
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
