"""Command-line entry point.

Exit codes: 0 success / holds / proved, 1 a meaningful negative (refuted,
witness found, no proof found, countermodel found), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import harness as h
from . import proofsys as ps
from . import relmodel as rm
from .finalg import (
    BUILTINS, FiniteAlgebra, TheoryLevel, check_axioms, check_quasi, derived_property_suite,
    enumerate_algebras,
)
from .syntax import ParseError, SortError
from .syntax import slang as s
from .syntax import terms as tm
from .translate import tr, tr_sequent, tr_with_map

OK, NEGATIVE, ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    try:
        return int(os.environ.get("SKAT_SEED", "0"))
    except ValueError:
        raise InputError("SKAT_SEED must be an integer") from None


def _load_json(arg: str):
    """Inline JSON, ``-`` for stdin, or a file path."""
    if arg == "-":
        return json.load(sys.stdin)
    text = arg.strip()
    if text.startswith("{"):
        return json.loads(text)
    path = Path(arg)
    if not path.exists():
        raise InputError(f"no such file: {arg}")
    return json.loads(path.read_text())


def _algebra(arg: str) -> FiniteAlgebra:
    if arg in BUILTINS:
        return BUILTINS[arg]()
    return FiniteAlgebra.from_json(_load_json(arg))


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# commands

def cmd_translate(args):
    x = s.parse_s(args.expr)
    if isinstance(x, s.Sequent):
        eq = tr_sequent(x)
        res = tr_with_map(x)
        skat = str(eq)
        eq_form = str(eq.as_eq())
    else:
        res = tr_with_map(x)
        skat = tm.show(tr(x))
        eq_form = None
    payload = {"input": s.show(x), "skat": skat, "variables": res.variables}
    lines = [skat]
    if args.eq and eq_form is not None:
        payload["eq"] = eq_form
        lines.append(eq_form)
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_check_proof(args):
    pt = ps.ProofTree.from_json(_load_json(args.proof))
    try:
        ps.check_proof(pt)
    except ps.RuleError as err:
        _emit(args, {"ok": False, "path": list(err.path), "rule": err.rule, "error": err.message},
              f"rejected: {err}")
        return NEGATIVE
    _emit(args, {"ok": True, "conclusion": s.show(pt.conclusion), "size": pt.size()},
          f"ok: {s.show(pt.conclusion)} ({pt.size()} nodes)")
    return OK


def cmd_prove(args):
    seq = s.parse_sequent(args.sequent)
    pt = ps.search_proof(seq, args.depth, args.lemma or ())
    if pt is None:
        _emit(args, {"proved": False, "sequent": s.show(seq)},
              f"no proof of {s.show(seq)} within depth {args.depth}")
        return NEGATIVE
    _emit(args, {"proved": True, "proof": pt.to_json()}, pt.pretty())
    return OK


def cmd_eval(args):
    M = rm.RelModel.from_json(_load_json(args.model))
    x = s.parse_s(args.expr)
    if isinstance(x, s.Sequent):
        raise InputError("eval takes an expression or environment; use 'valid' for sequents")
    r = rm.interpret_s(x, M)
    _emit(args, {"W": M.W, "pairs": [list(p) for p in r.pairs()]},
          "{" + ", ".join(f"({a},{b})" for a, b in r.pairs()) + "}")
    return OK


def cmd_valid(args):
    M = rm.RelModel.from_json(_load_json(args.model))
    seq = s.parse_sequent(args.sequent)
    ok = rm.sequent_valid(seq, M)
    _emit(args, {"valid": ok}, "valid" if ok else "invalid")
    return OK if ok else NEGATIVE


def cmd_countermodel(args):
    seq = s.parse_sequent(args.sequent)
    M = rm.find_countermodel(seq, args.max_w, args.budget, _seed(args), args.jobs)
    if M is None:
        _emit(args, {"found": False}, f"no countermodel with |W| <= {args.max_w} within budget")
        return OK
    _emit(args, {"found": True, "model": M.to_json()}, json.dumps(M.to_json()))
    return NEGATIVE


def cmd_check_algebra(args):
    A = _algebra(args.algebra)
    rep = check_axioms(A, args.level)
    reports = [rep]
    if args.derived:
        reports.append(derived_property_suite(A))
    ok = all(r.ok for r in reports)
    lines = [r.line(A) for rep_ in reports for r in rep_.results]
    lines.append(f"{'all pass' if ok else 'FAILED'} at level {TheoryLevel.parse(args.level).value}")
    payload = {"ok": ok, "axioms": rep.to_json()}
    if args.derived:
        payload["derived"] = reports[1].to_json()
    _emit(args, payload, "\n".join(lines))
    return OK if ok else NEGATIVE


def cmd_check_eq(args):
    A = _algebra(args.algebra)
    q = tm.parse_quasi(args.equation)
    w = check_quasi(A, q)
    if w is None:
        _emit(args, {"holds": True}, "holds")
        return OK
    labelled = {k: A.label(v) for k, v in w.assignment.items()}
    _emit(args, {"holds": False, "witness": w.assignment, "labels": labelled,
                 "lhs": A.label(w.lhs), "rhs": A.label(w.rhs)},
          f"witness {w.describe(A)}")
    return NEGATIVE


def cmd_mine(args):
    algs = list(enumerate_algebras(args.size, args.level, args.jobs))
    if not args.include_degenerate:
        algs = [A for A in algs if not A.degenerate]
    payload = {"size": args.size, "level": TheoryLevel.parse(args.level).value,
               "count": len(algs), "algebras": [A.to_json() for A in algs]}
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2))
    text = f"{len(algs)} algebra(s) of size {args.size} at level {payload['level']}"
    _emit(args, payload, text)
    return OK


def cmd_run_corpus(args):
    corpus = h.load_corpus(args.corpus)
    cfg = h.CorpusConfig(max_size=args.max_size, rel_samples=args.samples, seed=_seed(args))
    rep = h.run_embedding_corpus(corpus, cfg)
    _emit(args, rep.to_json(), rep.summary())
    return OK if rep.ok else NEGATIVE


def cmd_builtin(args):
    A = BUILTINS[args.name]()
    if args.json:
        print(json.dumps(A.to_json(), indent=2))
        return OK
    lab = A.label
    lines = [f"{args.name}: carrier {', '.join(lab(x) for x in A.elements)}"]
    for name in ("add", "mul", "rres", "lres"):
        t = getattr(A, name)
        if t is not None:
            lines.append(f"{name}:")
            lines += ["  " + " ".join(lab(v) for v in row) for row in t]
    for name in ("star", "anti", "ext", "bar"):
        t = getattr(A, name)
        if t is not None:
            lines.append(f"{name}: " + " ".join(f"{lab(x)}->{lab(t[x])}" for x in A.elements))
    if A.B is not None:
        lines.append("B: " + ", ".join(lab(b) for b in A.B))
    print("\n".join(lines))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skat", description="S sequents, their translation, and finite SKAT algebras")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("translate", cmd_translate, "translate an S sequent or expression")
    p.add_argument("expr")
    p.add_argument("--eq", action="store_true", help="also print the p + q = q form")

    p = add("check-proof", cmd_check_proof, "check a proof tree (JSON file, inline JSON or -)")
    p.add_argument("proof")

    p = add("prove", cmd_prove, "bounded proof search")
    p.add_argument("sequent")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--lemma", action="append", help="cut formula the search may use (repeatable)")

    p = add("eval", cmd_eval, "interpret an S expression in a model")
    p.add_argument("--model", required=True)
    p.add_argument("expr")

    p = add("valid", cmd_valid, "decide validity of a sequent in a model")
    p.add_argument("--model", required=True)
    p.add_argument("sequent")

    p = add("countermodel", cmd_countermodel, "search for a relational countermodel")
    p.add_argument("sequent")
    p.add_argument("--max-w", type=int, default=3)
    p.add_argument("--budget", type=int, default=rm.DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int)

    p = add("check-algebra", cmd_check_algebra, "check a finite algebra against a theory level")
    p.add_argument("--algebra", required=True, help="fig2, fig3, or algebra JSON")
    p.add_argument("--level", default="SKAT")
    p.add_argument("--derived", action="store_true", help="also run the derived-property suite")

    p = add("check-eq", cmd_check_eq, "check an equation or quasi-equation exhaustively")
    p.add_argument("--algebra", required=True)
    p.add_argument("equation")

    p = add("mine", cmd_mine, "enumerate small algebras up to isomorphism")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--level", default="SKAT")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--include-degenerate", action="store_true")
    p.add_argument("--out")

    p = add("run-corpus", cmd_run_corpus, "run the embedding corpus")
    p.add_argument("--corpus", help="JSON-lines corpus (default: the shipped one)")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int)

    p = add("builtin", cmd_builtin, "print a built-in algebra")
    p.add_argument("name", choices=sorted(BUILTINS))
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    try:
        return args.fn(args)
    except (ParseError, SortError, InputError, json.JSONDecodeError, KeyError, ValueError,
            rm.CarrierMismatch) as err:
        print(f"error: {err}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
