"""Abstract syntax of the logic S: tests, programs, formulas, environments, sequents.

Only the core grammar is represented. The constants ``1``, negation ``!b`` and
``p^*`` are input sugar and are expanded by the parser::

    1    ->  0 => 0
    !b   ->  b => 0
    p^*  ->  (0 => 0) + p^+

Concrete syntax, loosest to tightest binding: ``=>`` (right associative),
``+``, ``;``, prefix ``!``, postfix ``^+``/``^*``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Union

from ._lex import ParseError, SortError, TokenStream


class Sort(enum.Enum):
    TEST = "test"
    PROGRAM = "program"
    FORMULA = "formula"


@dataclass(frozen=True)
class TestVar:
    n: int

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class ProgVar:
    n: int

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Imp:
    lhs: "STerm"
    rhs: "STerm"

    def __post_init__(self):
        if not is_program(self.lhs):
            raise SortError(f"left of '=>' must be a program or test, got formula {show(self.lhs)}")
        if not is_formula(self.rhs):
            raise SortError(f"right of '=>' must be a test or formula, got program {show(self.rhs)}")

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Plus:
    lhs: "STerm"
    rhs: "STerm"

    def __post_init__(self):
        _require_programs("+", self.lhs, self.rhs)

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Seq:
    lhs: "STerm"
    rhs: "STerm"

    def __post_init__(self):
        _require_programs(";", self.lhs, self.rhs)

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class TransClos:
    arg: "STerm"

    def __post_init__(self):
        _require_programs("^+", self.arg)

    def __str__(self):
        return show(self)


STerm = Union[TestVar, ProgVar, Zero, Imp, Plus, Seq, TransClos]
Environment = tuple  # tuple[STerm, ...]

def neg(b: STerm) -> Imp:
    if sort_of(b) is not Sort.TEST:
        raise SortError(f"'!' applies to tests only, got {show(b)}")
    return Imp(b, ZERO)


def star(p: STerm) -> Plus:
    return Plus(ONE, TransClos(p))


def _require_programs(op, *args):
    for a in args:
        if not is_program(a):
            raise SortError(f"operand of {op!r} must be a program, got formula {show(a)}")


def sort_of(t: STerm) -> Sort:
    """Most specific sort; tests are both programs and formulas."""
    if isinstance(t, (TestVar, Zero)):
        return Sort.TEST
    if isinstance(t, Imp):
        if sort_of(t.lhs) is Sort.TEST and sort_of(t.rhs) is Sort.TEST:
            return Sort.TEST
        return Sort.FORMULA
    if isinstance(t, (ProgVar, Plus, Seq, TransClos)):
        return Sort.PROGRAM
    raise TypeError(f"not an S term: {t!r}")


def is_test(t) -> bool:
    return sort_of(t) is Sort.TEST


def is_program(t) -> bool:
    return sort_of(t) is not Sort.FORMULA


def is_formula(t) -> bool:
    return sort_of(t) is not Sort.PROGRAM


ZERO = Zero()
ONE = Imp(ZERO, ZERO)


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple
    succedent: STerm

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(self.antecedent))
        if not is_formula(self.succedent):
            raise SortError(f"succedent must be a formula, got program {show(self.succedent)}")

    def __str__(self):
        return show(self)


def subterms(t):
    yield t
    if isinstance(t, (Imp, Plus, Seq)):
        yield from subterms(t.lhs)
        yield from subterms(t.rhs)
    elif isinstance(t, TransClos):
        yield from subterms(t.arg)


def variables(x) -> set:
    """Test and program variables occurring in a term, environment or sequent."""
    if isinstance(x, Sequent):
        items = list(x.antecedent) + [x.succedent]
    elif isinstance(x, tuple):
        items = list(x)
    else:
        items = [x]
    return {s for t in items for s in subterms(t) if isinstance(s, (TestVar, ProgVar))}


def var_name(v) -> str:
    return f"b{v.n}" if isinstance(v, TestVar) else f"p{v.n}"


def var_from_name(name: str):
    m = re.fullmatch(r"([bp])([0-9]+)", name)
    if not m:
        raise ValueError(f"not an S variable name: {name!r}")
    cls = TestVar if m.group(1) == "b" else ProgVar
    return cls(int(m.group(2)))


# printing

_IMP, _PLUS, _SEQ, _POST, _ATOM = range(1, 6)


def _level(t) -> int:
    if isinstance(t, Imp):
        return _IMP
    if isinstance(t, Plus):
        return _PLUS
    if isinstance(t, Seq):
        return _SEQ
    if isinstance(t, TransClos):
        return _POST
    return _ATOM


def _wrap(t, needs: bool) -> str:
    s = _show_term(t)
    return f"({s})" if needs else s


def _show_term(t) -> str:
    if isinstance(t, TestVar):
        return f"b{t.n}"
    if isinstance(t, ProgVar):
        return f"p{t.n}"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Imp):
        return f"{_wrap(t.lhs, _level(t.lhs) <= _IMP)} => {_wrap(t.rhs, _level(t.rhs) < _IMP)}"
    if isinstance(t, (Plus, Seq)):
        lvl, op = (_PLUS, "+") if isinstance(t, Plus) else (_SEQ, ";")
        return f"{_wrap(t.lhs, _level(t.lhs) < lvl)} {op} {_wrap(t.rhs, _level(t.rhs) <= lvl)}"
    if isinstance(t, TransClos):
        return f"{_wrap(t.arg, _level(t.arg) < _POST)}^+"
    raise TypeError(f"not an S term: {t!r}")


def show(x) -> str:
    """Concrete syntax for a term, environment or sequent."""
    if isinstance(x, Sequent):
        env = show(x.antecedent)
        return f"{env} |- {show(x.succedent)}" if env else f"|- {show(x.succedent)}"
    if isinstance(x, tuple):
        return ", ".join(_show_term(t) for t in x)
    return _show_term(x)


# parsing

class _Parser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)

    def _sorted(self, build, tok):
        try:
            return build()
        except SortError as e:
            raise SortError(str(e), tok.pos) from None

    def expr(self):
        lhs = self.plus()
        if self.ts.at("=>"):
            tok = self.ts.next()
            rhs = self.expr()
            return self._sorted(lambda: Imp(lhs, rhs), tok)
        return lhs

    def plus(self):
        t = self.seq()
        while self.ts.at("+"):
            tok = self.ts.next()
            rhs = self.seq()
            t = self._sorted(lambda: Plus(t, rhs), tok)
        return t

    def seq(self):
        t = self.unary()
        while self.ts.at(";"):
            tok = self.ts.next()
            rhs = self.unary()
            t = self._sorted(lambda: Seq(t, rhs), tok)
        return t

    def unary(self):
        if self.ts.at("!"):
            tok = self.ts.next()
            arg = self.unary()
            return self._sorted(lambda: neg(arg), tok)
        return self.postfix()

    def postfix(self):
        t = self.atom()
        while self.ts.at("^+", "^*"):
            tok = self.ts.next()
            arg = t
            if tok.text == "^+":
                t = self._sorted(lambda: TransClos(arg), tok)
            else:
                t = self._sorted(lambda: star(arg), tok)
        return t

    def atom(self):
        tok = self.ts.peek
        if tok.kind == "number" and tok.text in ("0", "1"):
            self.ts.next()
            return ZERO if tok.text == "0" else ONE
        if tok.kind == "ident":
            m = re.fullmatch(r"([bp])([0-9]+)", tok.text)
            if not m:
                self.ts.error("expected a test variable bN or program variable pN")
            self.ts.next()
            n = int(m.group(2))
            return TestVar(n) if m.group(1) == "b" else ProgVar(n)
        if self.ts.at("("):
            self.ts.next()
            t = self.expr()
            self.ts.expect(")")
            return t
        self.ts.error("expected an S expression")

    def environment(self):
        items = []
        if self.ts.at("|-") or self.ts.peek.kind == "eof":
            return tuple(items)
        items.append(self.expr())
        while self.ts.at(","):
            self.ts.next()
            items.append(self.expr())
        return tuple(items)

    def top(self):
        env = self.environment()
        if self.ts.at("|-"):
            tok = self.ts.next()
            succ = self.expr()
            self.ts.done()
            return self._sorted(lambda: Sequent(env, succ), tok)
        self.ts.done()
        if not env:
            raise ParseError("empty input", 0, self.ts.text)
        return env[0] if len(env) == 1 else env


def parse_s(text: str):
    """Parse an S term, a comma separated environment, or a sequent ``env |- f``."""
    return _Parser(text).top()


def parse_sequent(text: str) -> Sequent:
    r = parse_s(text)
    if not isinstance(r, Sequent):
        raise ParseError("expected a sequent 'env |- f'", 0, text)
    return r


def parse_term(text: str) -> STerm:
    r = parse_s(text)
    if isinstance(r, (Sequent, tuple)):
        raise ParseError("expected a single S term", 0, text)
    return r
