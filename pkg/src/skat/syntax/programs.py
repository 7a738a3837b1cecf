"""Propositional while programs and their encodings as S programs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import slang as s
from . import terms as tm
from ._lex import SortError


@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Action:
    """Atomic action; encoded as the program variable with the same index."""

    n: int


@dataclass(frozen=True)
class Then:
    first: "WhileProgram"
    second: "WhileProgram"


@dataclass(frozen=True)
class If:
    cond: s.STerm
    then: "WhileProgram"
    orelse: "WhileProgram"

    def __post_init__(self):
        _require_test(self.cond)


@dataclass(frozen=True)
class While:
    cond: s.STerm
    body: "WhileProgram"

    def __post_init__(self):
        _require_test(self.cond)


WhileProgram = Union[Skip, Action, Then, If, While]


def _require_test(b):
    if s.sort_of(b) is not s.Sort.TEST:
        raise SortError(f"while-program conditions must be tests, got {s.show(b)}")


def encode_while(w) -> s.STerm:
    if isinstance(w, Skip):
        return s.ONE
    if isinstance(w, Action):
        return s.ProgVar(w.n)
    if isinstance(w, Then):
        return s.Seq(encode_while(w.first), encode_while(w.second))
    if isinstance(w, If):
        return s.Plus(s.Seq(w.cond, encode_while(w.then)),
                      s.Seq(s.neg(w.cond), encode_while(w.orelse)))
    if isinstance(w, While):
        return s.Seq(s.star(s.Seq(w.cond, encode_while(w.body))), s.neg(w.cond))
    raise TypeError(f"not a while program: {w!r}")


def _program(p):
    return encode_while(p) if isinstance(p, (Skip, Action, Then, If, While)) else p


def hoare_as_formula(b, p, c) -> s.STerm:
    """{b} p {c} as the S formula  b ; p => c."""
    _require_test(b)
    _require_test(c)
    return s.Imp(s.Seq(b, _program(p)), c)


def hoare_as_kat_equation(b, p, c) -> tm.Equation:
    """{b} p {c} as the equation  Tr(b) ; Tr(p) ; a(Tr(c)) = 0."""
    from ..translate import tr

    _require_test(b)
    _require_test(c)
    lhs = tm.Mul(tm.Mul(tr(b), tr(_program(p))), tm.Anti(tr(c)))
    return tm.Equation(lhs, tm.ZERO)
