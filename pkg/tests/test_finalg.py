import itertools

import pytest

from skat import relmodel as rm
from skat.finalg import (
    CLOSURE_EQUATION, FiniteAlgebra, MissingTable, TheoryLevel, builtin_fig2, builtin_fig3,
    check_axioms, check_equation, check_quasi, check_star_continuity, derived_property_suite,
    eval_term, full_relational_algebra,
)
from skat.finalg.algebra import UnassignedVariable
from skat.finalg.axioms import axioms_for
from skat.syntax import parse_skat

Z, ONE, T = 0, 1, 2


def boolean2(**extra):
    """{0, 1} as a Boolean algebra: join, meet, star 1, anti the complement."""
    return FiniteAlgebra(2, 0, 1, add=((0, 1), (1, 1)), mul=((0, 0), (0, 1)),
                         star=(1, 1), anti=(1, 0), **extra)


# the two built-in tables

def test_fig2_tables():
    A = builtin_fig2()
    assert A.mul[T][ONE] == T
    assert A.rres[T][ONE] == Z
    assert A.star[T] == T
    assert A.bar[Z] == ONE


def test_fig3_tables():
    A = builtin_fig3()
    assert A.anti == (1, 0, 0)
    assert A.ext == (0, 2, 2)
    assert A.lres == A.rres


def test_eval_examples():
    A = builtin_fig2()
    assert eval_term("x ; x", A, {"x": T}) == T
    assert eval_term("0 -> 0", A, {}) == T
    assert eval_term("e(1)", builtin_fig3(), {}) == T


def test_eval_errors():
    with pytest.raises(MissingTable):
        eval_term("a(x)", builtin_fig2(), {"x": 0})
    with pytest.raises(UnassignedVariable):
        eval_term("x + y", builtin_fig2(), {"x": 0})


# axiom levels

def test_fig2_is_rkat():
    rep = check_axioms(builtin_fig2(), TheoryLevel.RKAT)
    assert rep.ok, [r.line() for r in rep.failures]


def test_fig2_residual_is_not_complement():
    A = builtin_fig2()
    w = check_equation(A, "x -> 0 = bar(x)", domains={"x": A.B})
    assert w.assignment == {"x": Z} and (w.lhs, w.rhs) == (T, ONE)


def test_fig3_is_skat_star():
    rep = check_axioms(builtin_fig3(), TheoryLevel.SKATStar)
    assert rep.ok, [r.line() for r in rep.failures]
    for name in ("anti_zero", "ext_counit", "ext_unit", "ext_monotone", "star_continuity",
                 "rres_intro", "lres_elim", "star_induct_left"):
        assert rep[name].ok


def test_fig3_refutes_closure_equation():
    A = builtin_fig3()
    w = check_equation(A, CLOSURE_EQUATION)
    assert w.assignment == {"x": Z, "y": Z}
    assert (w.lhs, w.rhs) == (ONE, T)


def test_fig3_derived_properties():
    rep = derived_property_suite(builtin_fig3())
    assert rep.ok, [r.line() for r in rep.failures]
    assert "cod_disjoint" in rep.names()


def test_fig3_tests_form_boolean_subalgebra():
    A = builtin_fig3()
    K = A.cod_image()
    assert set(K) == {0, 1}
    for x, y in itertools.product(K, repeat=2):
        assert A.mul[x][y] in K and A.add[x][y] in K
    assert all(A.anti[x] in K for x in K)


def test_idempotence_always_holds():
    for A in (builtin_fig2(), builtin_fig3(), boolean2()):
        assert check_equation(A, "x + x = x") is None


def test_boolean_kac():
    assert check_axioms(boolean2(), TheoryLevel.KAC).ok


def test_boolean_skat():
    # ext(x) = x ; T with T = 1 here
    A = boolean2(rres=((1, 1), (0, 1)), lres=((1, 1), (0, 1)), ext=(0, 1))
    assert check_axioms(A, TheoryLevel.SKATStar).ok
    assert derived_property_suite(A).ok


def test_missing_tables_are_reported():
    rep = check_axioms(builtin_fig2(), TheoryLevel.SKAT)
    assert not rep.ok
    assert rep["anti_zero"].missing == "anti"


def test_broken_algebra_fails():
    A = builtin_fig3().with_tables(ext=(0, 1, 2))
    rep = check_axioms(A, TheoryLevel.SKAT)
    assert not rep["ext_unit"].ok


def test_witnesses_re_evaluate():
    A = builtin_fig3().with_tables(ext=(0, 1, 2))
    for r in check_axioms(A, TheoryLevel.SKAT).failures:
        q = next(ax for ax in axioms_for("SKAT") if ax.name == r.name).quasi
        asg = r.witness.assignment
        assert all(A.holds(p, asg) for p in q.premises)
        assert not A.holds(q.conclusion, asg)


def test_star_continuity_fails_for_bad_star():
    A = builtin_fig3().with_tables(star=(1, 2, 2))
    assert not check_star_continuity(A).ok


def test_quasi_equation_check():
    A = builtin_fig3()
    assert check_quasi(A, "x ; c(y) = 0 ==> c(x) <= a(y)") is None
    assert check_quasi(A, "x <= y ==> y <= x") is not None


def test_malformed_tables_rejected():
    with pytest.raises(ValueError):
        FiniteAlgebra(2, 0, 1, add=((0, 1), (1, 2)), mul=((0, 0), (0, 1)))


def test_json_round_trip():
    for A in (builtin_fig2(), builtin_fig3()):
        assert FiniteAlgebra.from_json(A.to_json()) == A


# the full relational algebra as a table

@pytest.mark.parametrize("n", [1, 2])
def test_relational_algebra_is_skat(n):
    A = full_relational_algebra(n)
    assert check_axioms(A, TheoryLevel.SKATStar).ok


def test_relational_algebra_derived_properties():
    rep = derived_property_suite(full_relational_algebra(2))
    assert rep.ok, [r.line() for r in rep.failures]


def test_relational_table_matches_direct_evaluation():
    A = full_relational_algebra(2)
    t = parse_skat("c(x -> e(c(y))) + x ; y^*")
    for x, y in itertools.product(rm.all_relations(2), repeat=2):
        assert eval_term(t, A, {"x": x.code, "y": y.code}) == rm.eval_skat(t, 2, {"x": x, "y": y}).code


def test_closure_equation_fails_relationally_too():
    # 0 -> 0 is the full relation, whose codomain is only the identity
    w = check_equation(full_relational_algebra(2), CLOSURE_EQUATION)
    assert w is not None and w.assignment == {"x": 0, "y": 0}
