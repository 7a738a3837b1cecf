"""Finite algebras given by explicit operation tables, and exhaustive equation checking."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, fields, replace

from ..syntax import terms as tm

TABLES = ("add", "mul", "star", "rres", "lres", "anti", "ext", "bar")
_BINARY_TABLES = ("add", "mul", "rres", "lres")


class MissingTable(ValueError):
    def __init__(self, table):
        self.table = table
        super().__init__(f"algebra has no {table!r} table")


class UnassignedVariable(KeyError):
    pass


@dataclass(frozen=True)
class FiniteAlgebra:
    """Carrier ``{0..size-1}``; ``add``/``mul``/``rres``/``lres`` are n x n tables
    indexed ``[left][right]``, the unary tables are length-n tuples.

    ``rres[y][z]`` is ``y -> z``; ``lres[x][z]`` is ``x ~> z``. The order is always
    the one induced by ``add``.
    """

    size: int
    zero: int
    one: int
    add: tuple
    mul: tuple
    star: tuple | None = None
    rres: tuple | None = None
    lres: tuple | None = None
    anti: tuple | None = None
    ext: tuple | None = None
    B: tuple | None = None
    bar: tuple | None = None
    names: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        for name in TABLES:
            t = getattr(self, name)
            if t is None:
                continue
            if name in _BINARY_TABLES:
                t = tuple(tuple(int(v) for v in row) for row in t)
                ok = len(t) == self.size and all(len(r) == self.size for r in t)
                vals = [v for r in t for v in r]
            else:
                t = tuple(int(v) for v in t)
                ok = len(t) == self.size
                vals = list(t)
            if not ok or any(not 0 <= v < self.size for v in vals):
                raise ValueError(f"malformed {name} table for size {self.size}")
            object.__setattr__(self, name, t)
        if self.B is not None:
            object.__setattr__(self, "B", tuple(sorted(set(int(b) for b in self.B))))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def elements(self):
        return range(self.size)

    @property
    def degenerate(self) -> bool:
        return self.zero == self.one

    def leq(self, x, y) -> bool:
        return self.add[x][y] == y

    def cod(self, x) -> int:
        if self.anti is None:
            raise MissingTable("anti")
        return self.anti[self.anti[x]]

    def join(self, xs) -> int:
        acc = self.zero
        for x in xs:
            acc = self.add[acc][x]
        return acc

    def top(self) -> int:
        return self.join(self.elements)

    def cod_image(self) -> tuple:
        return tuple(sorted({self.cod(x) for x in self.elements}))

    def label(self, x) -> str:
        return self.names[x] if self.names else str(x)

    def with_tables(self, **tables) -> "FiniteAlgebra":
        return replace(self, **tables)

    def table_key(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self) if f.name not in ("names",))

    # evaluation

    def evaluate(self, t, asg) -> int:
        return compile_term(t, self)(asg)

    def holds(self, eq: tm.Equation, asg) -> bool:
        lhs, rhs = self.evaluate(eq.lhs, asg), self.evaluate(eq.rhs, asg)
        return self.leq(lhs, rhs) if eq.leq else lhs == rhs

    # serialization

    def to_json(self) -> dict:
        out = {"size": self.size, "zero": self.zero, "one": self.one}
        for name in TABLES:
            t = getattr(self, name)
            if t is not None:
                out[name] = [list(r) for r in t] if name in _BINARY_TABLES else list(t)
        if self.B is not None:
            out["B"] = list(self.B)
        if self.names is not None:
            out["names"] = list(self.names)
        return out

    @classmethod
    def from_json(cls, data) -> "FiniteAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        kwargs = {k: data[k] for k in ("size", "zero", "one", "add", "mul")}
        for k in TABLES[2:] + ("B", "names"):
            if k in data:
                kwargs[k] = data[k]
        return cls(**kwargs)


def _table(A, name):
    t = getattr(A, name)
    if t is None:
        raise MissingTable(name)
    return t


def compile_term(t, A: FiniteAlgebra):
    """Turn a term into a function from assignments to elements."""
    if isinstance(t, tm.Var):
        name = t.name

        def var(asg):
            try:
                return asg[name]
            except KeyError:
                raise UnassignedVariable(name) from None
        return var
    if isinstance(t, tm.One):
        one = A.one
        return lambda asg: one
    if isinstance(t, tm.Zero):
        zero = A.zero
        return lambda asg: zero
    if isinstance(t, (tm.Mul, tm.Add, tm.RRes, tm.LRes)):
        name = {tm.Mul: "mul", tm.Add: "add", tm.RRes: "rres", tm.LRes: "lres"}[type(t)]
        table = _table(A, name)
        f, g = compile_term(t.lhs, A), compile_term(t.rhs, A)
        return lambda asg: table[f(asg)][g(asg)]
    if isinstance(t, tm.Cod):
        anti = _table(A, "anti")
        f = compile_term(t.arg, A)
        return lambda asg: anti[anti[f(asg)]]
    name = {tm.Star: "star", tm.Anti: "anti", tm.Ext: "ext", tm.Bar: "bar"}.get(type(t))
    if name is None:
        raise TypeError(f"not a term: {t!r}")
    table = _table(A, name)
    f = compile_term(t.arg, A)
    return lambda asg: table[f(asg)]


@dataclass(frozen=True)
class Witness:
    assignment: dict
    lhs: int
    rhs: int

    def describe(self, A: FiniteAlgebra | None = None) -> str:
        lab = A.label if A is not None else str
        asg = ", ".join(f"{k}={lab(v)}" for k, v in self.assignment.items())
        return f"{asg}: lhs {lab(self.lhs)}, rhs {lab(self.rhs)}"


def _as_quasi(q):
    if isinstance(q, str):
        return tm.parse_quasi(q)
    if isinstance(q, tm.Equation):
        return tm.QuasiEquation((), q)
    return q


def assignments(A, names, domains=None):
    """All assignments in lexicographic order of the sorted variable names."""
    names = sorted(names)
    doms = [list((domains or {}).get(n, A.elements)) for n in names]
    for vals in itertools.product(*doms):
        yield dict(zip(names, vals))


def check_quasi(A: FiniteAlgebra, q, domains=None) -> Witness | None:
    """First violating assignment of a (quasi-)equation, or None if it holds.

    ``domains`` optionally restricts variables, e.g. to the test set.
    """
    q = _as_quasi(q)
    prem = [(compile_term(e.lhs, A), compile_term(e.rhs, A), e.leq) for e in q.premises]
    c = q.conclusion
    lhs_f, rhs_f = compile_term(c.lhs, A), compile_term(c.rhs, A)
    add = A.add
    for asg in assignments(A, tm.variables(q), domains):
        ok = True
        for f, g, leq in prem:
            u, v = f(asg), g(asg)
            if (add[u][v] != v) if leq else (u != v):
                ok = False
                break
        if not ok:
            continue
        u, v = lhs_f(asg), rhs_f(asg)
        if (add[u][v] != v) if c.leq else (u != v):
            return Witness(asg, u, v)
    return None


def check_equation(A: FiniteAlgebra, eq, domains=None) -> Witness | None:
    """Exhaustive check of ``p = q`` or ``p <= q``; returns the first witness."""
    if isinstance(eq, str):
        eq = tm.parse_equation(eq)
    return check_quasi(A, eq, domains)


def eval_term(t, A: FiniteAlgebra, asg: dict) -> int:
    if isinstance(t, str):
        t = tm.parse_skat(t)
    return A.evaluate(t, asg)
