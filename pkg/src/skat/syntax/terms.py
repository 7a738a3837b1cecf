"""One-sorted term language for Kleene algebras with codomain, residuals and e.

Concrete syntax, loosest to tightest: ``->`` (right residual) and ``~>`` (left
residual), both right associative; ``+``; ``;`` or ``.``; postfix ``^*``;
function forms ``c(..)``, ``a(..)``, ``e(..)`` and ``bar(..)``.

``bar`` is only meaningful in two-sorted algebras that carry a test
complement table. ``0 -> 0`` is the top element of any residuated algebra and
has no separate constructor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ._lex import ParseError, TokenStream

FUNCTIONS = ("c", "a", "e", "bar")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class One:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Mul:
    lhs: "Term"
    rhs: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Add:
    lhs: "Term"
    rhs: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class RRes:
    """``lhs -> rhs``: the largest x with x ; lhs <= rhs."""

    lhs: "Term"
    rhs: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class LRes:
    """``lhs ~> rhs``: the largest y with lhs ; y <= rhs."""

    lhs: "Term"
    rhs: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Star:
    arg: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Cod:
    arg: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Anti:
    arg: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Ext:
    arg: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Bar:
    arg: "Term"

    def __str__(self):
        return show(self)


Term = Union[Var, One, Zero, Mul, Add, RRes, LRes, Star, Cod, Anti, Ext, Bar]

ONE = One()
ZERO = Zero()
TOP = RRes(ZERO, ZERO)

_UNARY = {"c": Cod, "a": Anti, "e": Ext, "bar": Bar}
_UNARY_NAME = {v: k for k, v in _UNARY.items()}
_BINARY = (Mul, Add, RRes, LRes)


@dataclass(frozen=True)
class Equation:
    """``lhs = rhs`` or, with ``leq``, ``lhs <= rhs`` (short for lhs + rhs = rhs)."""

    lhs: Term
    rhs: Term
    leq: bool = False

    def as_eq(self) -> "Equation":
        if not self.leq:
            return self
        return Equation(Add(self.lhs, self.rhs), self.rhs)

    def __str__(self):
        return f"{show(self.lhs)} {'<=' if self.leq else '='} {show(self.rhs)}"


def Leq(lhs, rhs) -> Equation:
    return Equation(lhs, rhs, leq=True)


@dataclass(frozen=True)
class QuasiEquation:
    """Horn clause: all premises imply the conclusion."""

    premises: tuple
    conclusion: Equation

    def __str__(self):
        if not self.premises:
            return str(self.conclusion)
        return " & ".join(map(str, self.premises)) + f" ==> {self.conclusion}"


def children(t) -> tuple:
    if isinstance(t, _BINARY):
        return (t.lhs, t.rhs)
    if isinstance(t, (Star, Cod, Anti, Ext, Bar)):
        return (t.arg,)
    return ()


def variables(x) -> set[str]:
    if isinstance(x, Equation):
        return variables(x.lhs) | variables(x.rhs)
    if isinstance(x, QuasiEquation):
        out = variables(x.conclusion)
        for p in x.premises:
            out |= variables(p)
        return out
    if isinstance(x, Var):
        return {x.name}
    out = set()
    for ch in children(x):
        out |= variables(ch)
    return out


def size(t) -> int:
    return 1 + sum(size(ch) for ch in children(t))


def normalize_cod(t):
    """Rewrite every ``a(a(p))`` to ``c(p)``, bottom up."""
    if isinstance(t, _BINARY):
        return type(t)(normalize_cod(t.lhs), normalize_cod(t.rhs))
    if isinstance(t, Anti):
        arg = normalize_cod(t.arg)
        if isinstance(arg, Anti):
            return Cod(arg.arg)
        return Anti(arg)
    if isinstance(t, (Star, Cod, Ext, Bar)):
        return type(t)(normalize_cod(t.arg))
    return t


# printing

_RES, _ADD, _MUL, _POST, _ATOM = range(1, 6)


def _level(t) -> int:
    if isinstance(t, (RRes, LRes)):
        return _RES
    if isinstance(t, Add):
        return _ADD
    if isinstance(t, Mul):
        return _MUL
    if isinstance(t, Star):
        return _POST
    return _ATOM


def _wrap(t, needs):
    s = show(t)
    return f"({s})" if needs else s


def show(t) -> str:
    if isinstance(t, (Equation, QuasiEquation)):
        return str(t)
    if isinstance(t, (Var, One, Zero)):
        return str(t)
    if isinstance(t, (RRes, LRes)):
        op = "->" if isinstance(t, RRes) else "~>"
        return f"{_wrap(t.lhs, _level(t.lhs) <= _RES)} {op} {_wrap(t.rhs, _level(t.rhs) < _RES)}"
    if isinstance(t, (Add, Mul)):
        lvl, op = (_ADD, "+") if isinstance(t, Add) else (_MUL, ";")
        return f"{_wrap(t.lhs, _level(t.lhs) < lvl)} {op} {_wrap(t.rhs, _level(t.rhs) <= lvl)}"
    if isinstance(t, Star):
        return f"{_wrap(t.arg, _level(t.arg) < _POST)}^*"
    if type(t) in _UNARY_NAME:
        return f"{_UNARY_NAME[type(t)]}({show(t.arg)})"
    raise TypeError(f"not a term: {t!r}")


# parsing

class _Parser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)

    def expr(self):
        lhs = self.add()
        if self.ts.at("->", "~>"):
            op = self.ts.next().text
            rhs = self.expr()
            return RRes(lhs, rhs) if op == "->" else LRes(lhs, rhs)
        return lhs

    def add(self):
        t = self.mul()
        while self.ts.at("+"):
            self.ts.next()
            t = Add(t, self.mul())
        return t

    def mul(self):
        t = self.postfix()
        while self.ts.at(";", "."):
            self.ts.next()
            t = Mul(t, self.postfix())
        return t

    def postfix(self):
        t = self.atom()
        while self.ts.at("^*"):
            self.ts.next()
            t = Star(t)
        return t

    def atom(self):
        tok = self.ts.peek
        if tok.kind == "number":
            if tok.text not in ("0", "1"):
                self.ts.error("only the constants 0 and 1 are allowed")
            self.ts.next()
            return ZERO if tok.text == "0" else ONE
        if tok.kind == "ident":
            self.ts.next()
            if tok.text in _UNARY:
                self.ts.expect("(")
                arg = self.expr()
                self.ts.expect(")")
                return _UNARY[tok.text](arg)
            return Var(tok.text)
        if self.ts.at("("):
            self.ts.next()
            t = self.expr()
            self.ts.expect(")")
            return t
        self.ts.error("expected a term")

    def equation(self):
        lhs = self.expr()
        if not self.ts.at("=", "<="):
            self.ts.error("expected '=' or '<='")
        op = self.ts.next().text
        rhs = self.expr()
        return Equation(lhs, rhs, leq=(op == "<="))

    def quasi(self):
        eqs = [self.equation()]
        while self.ts.at("&"):
            self.ts.next()
            eqs.append(self.equation())
        if self.ts.at("==>"):
            self.ts.next()
            return QuasiEquation(tuple(eqs), self.equation())
        if len(eqs) > 1:
            self.ts.error("expected '==>' after premises")
        return QuasiEquation((), eqs[0])


def parse_skat(text: str) -> Term:
    p = _Parser(text)
    t = p.expr()
    p.ts.done()
    return t


def parse_equation(text: str) -> Equation:
    p = _Parser(text)
    eq = p.equation()
    p.ts.done()
    return eq


def parse_quasi(text: str) -> QuasiEquation:
    """``eq & eq & ... ==> eq``; a bare equation has no premises."""
    p = _Parser(text)
    q = p.quasi()
    p.ts.done()
    return q


__all__ = [
    "Var", "One", "Zero", "Mul", "Add", "RRes", "LRes", "Star", "Cod", "Anti", "Ext", "Bar",
    "Term", "Equation", "Leq", "QuasiEquation", "ONE", "ZERO", "TOP", "ParseError",
    "parse_skat", "parse_equation", "parse_quasi", "show", "variables", "normalize_cod",
]
