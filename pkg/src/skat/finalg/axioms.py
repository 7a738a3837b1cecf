"""Axiom suites for each theory level, and the derived-property suites."""
from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass, field

from ..syntax import terms as tm
from .algebra import FiniteAlgebra, MissingTable, Witness, check_quasi


_parse = lru_cache(maxsize=None)(tm.parse_quasi)


class TheoryLevel(enum.Enum):
    IdemSemiring = "IdemSemiring"
    KleeneAlgebra = "KleeneAlgebra"
    StarContinuous = "StarContinuous"
    KAT = "KAT"
    RKAT = "RKAT"
    KAC = "KAC"
    SKAT = "SKAT"
    SKATStar = "SKATStar"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        for lvl in cls:
            if lvl.value.lower() == str(name).lower():
                return lvl
        raise ValueError(f"unknown theory level {name!r}; one of {[l.value for l in cls]}")


@dataclass(frozen=True)
class Axiom:
    name: str
    text: str
    over_tests: bool = False  # variables range over B
    over_cod: bool = False  # variables range over c(K)

    @property
    def quasi(self) -> tm.QuasiEquation:
        return _parse(self.text)


@dataclass
class AxiomResult:
    name: str
    ok: bool
    witness: Witness | None = None
    missing: str | None = None
    detail: str = ""

    def line(self, A=None) -> str:
        if self.ok:
            return f"PASS {self.name}"
        if self.missing:
            return f"MISSING {self.name} (no {self.missing} table)"
        why = self.witness.describe(A) if self.witness else self.detail
        return f"FAIL {self.name}: {why}"


@dataclass
class AxiomReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def __getitem__(self, name) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self):
        return [r.name for r in self.results]

    def to_json(self) -> dict:
        return {"ok": self.ok, "results": [
            {"name": r.name, "ok": r.ok, "missing": r.missing,
             "witness": None if r.witness is None else
             {"assignment": r.witness.assignment, "lhs": r.witness.lhs, "rhs": r.witness.rhs},
             "detail": r.detail or None}
            for r in self.results]}


A_ = Axiom

SEMIRING = [
    A_("add_assoc", "x + (y + z) = (x + y) + z"),
    A_("add_comm", "x + y = y + x"),
    A_("add_idem", "x + x = x"),
    A_("add_unit", "x + 0 = x"),
    A_("mul_assoc", "x ; (y ; z) = (x ; y) ; z"),
    A_("mul_left_unit", "1 ; x = x"),
    A_("mul_right_unit", "x ; 1 = x"),
    A_("left_distrib", "x ; (y + z) = x ; y + x ; z"),
    A_("right_distrib", "(x + y) ; z = x ; z + y ; z"),
    A_("left_annihil", "0 ; x = 0"),
    A_("right_annihil", "x ; 0 = 0"),
]

KLEENE = [
    A_("star_unfold_left", "1 + x ; x^* <= x^*"),
    A_("star_unfold_right", "1 + x^* ; x <= x^*"),
    A_("star_induct_left", "y + x ; z <= z ==> x^* ; y <= z"),
    A_("star_induct_right", "y + z ; x <= z ==> y ; x^* <= z"),
]

# (B, ;, +, bar, 1, 0) is a Boolean algebra; semiring laws are inherited
TESTS = [
    A_("test_mul_comm", "x ; y = y ; x", over_tests=True),
    A_("test_mul_idem", "x ; x = x", over_tests=True),
    A_("test_absorb_add", "x + x ; y = x", over_tests=True),
    A_("test_absorb_mul", "x ; (x + y) = x", over_tests=True),
    A_("test_distrib_add", "x + y ; z = (x + y) ; (x + z)", over_tests=True),
    A_("test_complement_add", "x + bar(x) = 1", over_tests=True),
    A_("test_complement_mul", "x ; bar(x) = 0", over_tests=True),
]

RIGHT_RESIDUAL = [
    A_("rres_intro", "x ; y <= z ==> x <= y -> z"),
    A_("rres_elim", "x <= y -> z ==> x ; y <= z"),
]

LEFT_RESIDUAL = [
    A_("lres_intro", "x ; y <= z ==> y <= x ~> z"),
    A_("lres_elim", "y <= x ~> z ==> x ; y <= z"),
]

ANTI = [
    A_("anti_zero", "x ; a(x) <= 0"),
    A_("anti_locality", "a(x ; y) <= a(a(a(x)) ; y)"),
    A_("anti_excluded_middle", "a(x) + a(a(x)) = 1"),
]

EXT = [
    A_("ext_counit", "a(a(e(x))) <= x"),
    A_("ext_unit", "x <= e(a(a(x)))"),
    A_("ext_monotone", "e(x) <= e(x + y)"),
]

CODOMAIN_PROPERTIES = [
    A_("cod_preserver", "x <= x ; c(x)"),
    A_("cod_locality", "c(x ; y) = c(c(x) ; y)"),
    A_("cod_subidentity", "c(x) <= 1"),
    A_("cod_zero", "c(0) = 0"),
    A_("cod_additive", "c(x + y) = c(x) + c(y)"),
    A_("cod_fixpoint", "c(c(x)) = c(x)"),
    A_("cod_idempotent", "c(x) ; c(x) = c(x)"),
    A_("cod_restriction", "c(x ; y) <= c(y)"),
    A_("cod_least_preserver", "x <= x ; c(y) ==> c(x) <= c(y)"),
]

TEST_ALGEBRA_PROPERTIES = [
    A_("cod_one", "c(1) = 1"),
    A_("cod_mul_closed", "c(x) ; c(y) = c(c(x) ; c(y))"),
    A_("cod_complement_add", "c(x) + a(c(x)) = 1"),
    A_("cod_complement_mul", "c(x) ; a(c(x)) = 0"),
    A_("tests_closed_mul", "c(x ; y) = x ; y", over_cod=True),
    A_("tests_closed_add", "c(x + y) = x + y", over_cod=True),
    A_("tests_closed_anti", "c(a(x)) = a(x)", over_cod=True),
    A_("tests_mul_comm", "x ; y = y ; x", over_cod=True),
    A_("tests_mul_idem", "x ; x = x", over_cod=True),
    A_("tests_absorb_add", "x + x ; y = x", over_cod=True),
    A_("tests_absorb_mul", "x ; (x + y) = x", over_cod=True),
    A_("tests_distrib_add", "x + y ; z = (x + y) ; (x + z)", over_cod=True),
    A_("tests_distrib_mul", "x ; (y + z) = x ; y + x ; z", over_cod=True),
    A_("tests_complement_add", "x + a(x) = 1", over_cod=True),
    A_("tests_complement_mul", "x ; a(x) = 0", over_cod=True),
]

SKAT_PROPERTIES = [
    A_("cod_galois_intro", "c(x) <= y ==> x <= e(y)"),
    A_("cod_galois_elim", "x <= e(y) ==> c(x) <= y"),
    A_("cod_implication", "c(x -> y) <= x -> x ; c(y)"),
    A_("cod_to_ant", "a(x) = c(c(x) -> 0)"),
    A_("cod_disjoint", "x ; c(y) = 0 ==> c(x) <= a(y)"),
]

# holds for Heyting-style test algebras, fails in general
CLOSURE_EQUATION = "c(c(x) -> c(y)) = c(x) -> c(y)"


def axioms_for(level) -> list:
    level = TheoryLevel.parse(level)
    L = TheoryLevel
    out = list(SEMIRING)
    if level is L.IdemSemiring:
        return out
    out += KLEENE
    if level in (L.KAT, L.RKAT):
        out += TESTS
    if level is L.RKAT:
        out += RIGHT_RESIDUAL
    if level in (L.KAC, L.SKAT, L.SKATStar):
        out += ANTI
    if level in (L.SKAT, L.SKATStar):
        out += RIGHT_RESIDUAL + LEFT_RESIDUAL + EXT
    return out


def needs_continuity(level) -> bool:
    return TheoryLevel.parse(level) in (TheoryLevel.StarContinuous, TheoryLevel.SKATStar)


def _powers(A, y):
    seen = []
    p = A.one
    while p not in seen:
        seen.append(p)
        p = A.mul[p][y]
    return seen


def check_star_continuity(A: FiniteAlgebra) -> AxiomResult:
    """``x ; y^* ; z`` equals the join of all ``x ; y^n ; z``.

    The powers of y form a finite set, so the join is exact.
    """
    name = "star_continuity"
    if A.star is None:
        return AxiomResult(name, False, missing="star")
    mul = A.mul
    for y in A.elements:
        pw = _powers(A, y)
        for x in A.elements:
            for z in A.elements:
                lhs = mul[mul[x][A.star[y]]][z]
                rhs = A.join(mul[mul[x][w]][z] for w in pw)
                if lhs != rhs:
                    return AxiomResult(name, False, Witness({"x": x, "y": y, "z": z}, lhs, rhs))
    return AxiomResult(name, True)


def _check_test_set(A) -> list:
    out = []
    if A.B is None or A.bar is None:
        return [AxiomResult("test_set", False, missing="B" if A.B is None else "bar")]
    B = set(A.B)
    ok = A.zero in B and A.one in B
    out.append(AxiomResult("test_constants", ok, detail="" if ok else "0 or 1 not in B"))
    bad = [(x, y) for x in B for y in B if A.mul[x][y] not in B or A.add[x][y] not in B]
    bad_bar = [x for x in B if A.bar[x] not in B]
    ok = not bad and not bad_bar
    out.append(AxiomResult("test_closed", ok, detail="" if ok else f"B not closed at {bad[:1] or bad_bar[:1]}"))
    return out


def run_axiom(A: FiniteAlgebra, ax: Axiom) -> AxiomResult:
    domains = None
    if ax.over_tests:
        if A.B is None:
            return AxiomResult(ax.name, False, missing="B")
        domains = {v: A.B for v in tm.variables(ax.quasi)}
    if ax.over_cod:
        if A.anti is None:
            return AxiomResult(ax.name, False, missing="anti")
        domains = {v: A.cod_image() for v in tm.variables(ax.quasi)}
    try:
        w = check_quasi(A, ax.quasi, domains)
    except MissingTable as e:
        return AxiomResult(ax.name, False, missing=e.table)
    return AxiomResult(ax.name, w is None, w)


def check_axioms(A: FiniteAlgebra, level) -> AxiomReport:
    level = TheoryLevel.parse(level)
    results = []
    if level in (TheoryLevel.KAT, TheoryLevel.RKAT):
        results += _check_test_set(A)
    results += [run_axiom(A, ax) for ax in axioms_for(level)]
    if needs_continuity(level):
        results.append(check_star_continuity(A))
    return AxiomReport(results)


def derived_property_suite(A: FiniteAlgebra) -> AxiomReport:
    """Consequences of the codomain (and, with residuals and e, SKAT) axioms.

    Every entry is a theorem of the corresponding class, so a failure on an
    algebra that passed its axioms points at a bug.
    """
    props = []
    if A.anti is not None:
        props += CODOMAIN_PROPERTIES + TEST_ALGEBRA_PROPERTIES
    if A.anti is not None and A.rres is not None and A.ext is not None:
        props += SKAT_PROPERTIES
    return AxiomReport([run_axiom(A, ax) for ax in props])
