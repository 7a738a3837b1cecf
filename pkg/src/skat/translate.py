"""Translation of S expressions and sequents into the codomain term language.

Program variable ``p_n`` becomes ``x_{2n}``; test variable ``b_n`` becomes
``c(x_{2n+1})``. Implications of either kind become ``c(lhs -> e(rhs))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import slang as s
from .syntax import terms as tm


@dataclass(frozen=True)
class TrResult:
    term: tm.Term
    variables: dict = field(default_factory=dict)  # "x3" -> "b1"


def prog_var(n: int) -> tm.Var:
    return tm.Var(f"x{2 * n}")


def test_var(n: int) -> tm.Var:
    return tm.Var(f"x{2 * n + 1}")


def _tr(e):
    if isinstance(e, s.ProgVar):
        return prog_var(e.n)
    if isinstance(e, s.TestVar):
        return tm.Cod(test_var(e.n))
    if isinstance(e, s.Zero):
        return tm.Cod(tm.ZERO)
    if isinstance(e, s.Imp):
        return tm.Cod(tm.RRes(_tr(e.lhs), tm.Ext(_tr(e.rhs))))
    if isinstance(e, s.Plus):
        return tm.Add(_tr(e.lhs), _tr(e.rhs))
    if isinstance(e, s.Seq):
        return tm.Mul(_tr(e.lhs), _tr(e.rhs))
    if isinstance(e, s.TransClos):
        p = _tr(e.arg)
        return tm.Mul(p, tm.Star(p))
    raise TypeError(f"not an S expression: {e!r}")


def tr(e) -> tm.Term:
    """Translate an S term or environment (a tuple; empty means 1).

    Environments are folded left: ``Tr(a1, a2, a3) = (Tr a1 ; Tr a2) ; Tr a3``.
    """
    if isinstance(e, str):
        e = s.parse_s(e)
    if isinstance(e, tuple):
        if not e:
            return tm.ONE
        out = _tr(e[0])
        for item in e[1:]:
            out = tm.Mul(out, _tr(item))
        return out
    return _tr(e)


def tr_with_map(e) -> TrResult:
    if isinstance(e, s.Sequent):
        vs = s.variables(e)
        term = tr_sequent(e)
    else:
        vs = s.variables(e if not isinstance(e, str) else s.parse_s(e))
        term = tr(e)
    mapping = {}
    for v in sorted(vs, key=lambda v: (isinstance(v, s.TestVar), v.n)):
        x = test_var(v.n) if isinstance(v, s.TestVar) else prog_var(v.n)
        mapping[x.name] = s.var_name(v)
    return TrResult(term, mapping)


def tr_sequent(seq: s.Sequent) -> tm.Equation:
    """``c(Tr(env)) <= Tr(f)``."""
    if isinstance(seq, str):
        seq = s.parse_sequent(seq)
    return tm.Leq(tm.Cod(tr(seq.antecedent)), tr(seq.succedent))


def formula_shape_check(t: tm.Term) -> bool:
    return isinstance(t, tm.Cod)
