"""Batch command line front-end.

    intersync check proof.isc
    intersync eliminate proof.isc --trace steps.json
    intersync translate proof.isl --to isc
    intersync extract proof.isl --vars x,y

Exit status: 0 success, 1 check or step failure, 2 precondition violation,
3 syntax error, 4 step budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import threading
from typing import List

from . import cutelim, isc, isl, it, lj, syntax
from .core import format_molecule
from .errors import KernelError, PreconditionError, ProofSyntaxError, StepBudgetExceeded

COMMANDS = ("check", "clean", "canon", "eliminate", "translate", "project", "extract", "embed",
            "lj-eliminate")


class Wrong(PreconditionError):
    """Input document has the wrong system for the requested command."""


def _need(doc, *systems):
    if doc.system not in systems:
        raise Wrong(f"expected a {' or '.join(systems)} document, got {doc.system}")


def _check(doc):
    lines = []
    for d in doc.payload:
        if doc.system == "it":
            lines.append(str(it.check_it(d)))
        elif doc.system == "lj":
            lines.append(str(lj.check_lj(d)))
        elif doc.system == "isl":
            lines.append(format_molecule(isl.check_isl(d)))
        else:
            lines.append(format_molecule(isc.check_isc(d)))
    return lines


def _emit(args, doc, out):
    if args.quiet:
        return
    if args.pretty:
        for d in doc.payload:
            out.write(syntax.format_tree(d) + "\n")
    else:
        out.write(syntax.serialize(doc))


def run_one(args, text: str, out) -> None:
    doc = syntax.parse(text)
    cmd = args.command
    if cmd == "check":
        lines = _check(doc)
        if not args.quiet:
            out.write("\n".join(lines) + "\n")
        return
    _check(doc)
    d = doc.derivation
    keep = dict(name=doc.name, comment=doc.comment)
    if cmd == "clean":
        _need(doc, "isc")
        result = syntax.document(isc.clean(d), **keep)
    elif cmd == "canon":
        _need(doc, "isc")
        result = syntax.document(isc.canonicalize(d), **keep)
    elif cmd == "eliminate":
        _need(doc, "isc")
        try:
            final, trace = cutelim.eliminate(d, max_steps=args.max_steps, strict=args.strict)
        except StepBudgetExceeded as e:
            if args.trace and e.trace is not None:
                _write_trace(args.trace, e.trace)
            raise
        if args.trace:
            _write_trace(args.trace, trace)
        result = syntax.document(final, **keep)
    elif cmd == "translate":
        result = _translate(doc, args.to, keep)
    elif cmd == "project":
        _need(doc, "isc")
        result = syntax.document(isc.project_to_lj(d), system="lj", **keep)
    elif cmd == "extract":
        _need(doc, "isl")
        names = [v.strip() for v in args.vars.split(",")] if args.vars.strip() else []
        term, proofs = isl.extract_term(d, names)
        result = syntax.document(proofs, system="it", name=doc.name,
                                 comment=f"term {it.format_term(term)}")
    elif cmd == "embed":
        _need(doc, "it")
        result = syntax.document(isl.embed_typings(doc.payload), **keep)
    else:  # lj-eliminate
        _need(doc, "lj")
        result = syntax.document([lj.lj_eliminate(q, args.max_steps) for q in doc.payload],
                                 system="lj", **keep)
    _emit(args, result, out)


def _translate(doc, target, keep):
    d = doc.derivation
    if doc.system == "isl" and target == "isc":
        return syntax.document(isc.isl_to_isc(d), **keep)
    if doc.system == "isc" and target == "isl":
        return syntax.document(isc.isc_to_isl(d), **keep)
    if doc.system == "isc" and target == "lj":
        return syntax.document(isc.project_to_lj(d), system="lj", **keep)
    if doc.system == "isl" and target == "lj":
        return syntax.document(isc.project_to_lj(isc.isl_to_isc(d)), system="lj", **keep)
    if doc.system == target:
        return doc
    raise Wrong(f"no translation from {doc.system} to {target}")


def _write_trace(path, trace):
    with open(path, "w") as fh:
        fh.write(format_trace(trace))


def format_trace(trace) -> str:
    """One JSON record per line inside a top-level array."""
    records = [json.dumps(r) for r in trace.to_json()]
    if not records:
        return "[]\n"
    return "[\n" + ",\n".join(records) + "\n]\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="intersync", description="ISC/ISL/LJ/IT proof toolkit")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("files", nargs="+", help="proof documents ('-' for stdin)")
        sp.add_argument("--quiet", action="store_true", help="suppress normal output")
        sp.add_argument("--pretty", action="store_true", help="print an indented tree")
        sp.add_argument("--max-steps", type=int, default=100000)
        if name == "eliminate":
            sp.add_argument("--trace", metavar="PATH", help="write the step trace as JSON")
            sp.add_argument("--strict", action="store_true",
                            help="fail on a step whose new cuts are not smaller")
        if name == "translate":
            sp.add_argument("--to", required=True, choices=("isl", "isc", "lj"))
        if name == "extract":
            sp.add_argument("--vars", required=True, help="comma separated variable names")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def main(argv: List[str] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    status = 0
    for path in args.files:
        try:
            run_one(args, _read(path), out)
        except ProofSyntaxError as e:
            err.write(f"{path}:{e}\n")
            status = max(status, 3)
        except KernelError as e:
            err.write(f"{path}: {e}\n")
            status = max(status, e.exit_code)
        except OSError as e:
            err.write(f"{path}: {e.strerror}\n")
            status = max(status, 2)
    return status


def entry() -> None:
    # deep proof trees need a bigger C stack than the main thread has
    threading.stack_size(512 * 1024 * 1024)
    result = []
    t = threading.Thread(target=lambda: result.append(main()))
    t.start()
    t.join()
    sys.exit(result[0] if result else 1)


if __name__ == "__main__":
    entry()
