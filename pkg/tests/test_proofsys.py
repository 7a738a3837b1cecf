import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skat import proofsys as ps
from skat import relmodel as rm
from skat.finalg import check_quasi, full_relational_algebra
from skat.harness import random_formula, random_program, random_test, skat_star_algebras
from skat.proofsys import ProofTree, RuleError, check_proof, search_proof
from skat.syntax import parse_sequent, parse_term
from skat.syntax import programs as pr
from skat.syntax import slang as s
from skat.translate import tr_sequent

b0, b1 = s.TestVar(0), s.TestVar(1)
p0, p1 = s.ProgVar(0), s.ProgVar(1)


def node(concl, rule, *premises, **inst):
    return ProofTree(parse_sequent(concl), rule, premises, inst)


def test_sixteen_rules():
    assert len(ps.RULES) == 16
    assert {r for r, k in ps.ARITY.items() if k == 0} == {"Id", "I0"}
    assert {r for r, k in ps.ARITY.items() if k == 2} == {"TC", "Cut", "IOplus", "IPlus"}


# checker, rule by rule

def test_id_leaf():
    assert check_proof(node("b0 |- b0", "Id"))


def test_one_in_two_steps():
    pt = node("|- 0 => 0", "RImp", node("0 |- 0", "I0"))
    assert check_proof(pt)


def test_id_rejects_programs():
    with pytest.raises(RuleError) as e:
        check_proof(node("p0 |- p0 => b0", "Id"))
    assert e.value.path == () and e.value.rule == "Id"


def test_id_rejects_longer_environment():
    with pytest.raises(RuleError):
        check_proof(node("b0, b0 |- b0", "Id"))


def test_arity_error_is_located():
    inner = node("0 |- 0", "I0", node("0 |- 0", "I0"))
    pt = node("|- 0 => 0", "RImp", inner)
    with pytest.raises(RuleError) as e:
        check_proof(pt)
    assert e.value.path == (0,)
    assert "premise" in e.value.message
    assert "root.premises[0]" in str(e.value)


def test_unknown_rule():
    with pytest.raises(RuleError):
        check_proof(node("b0 |- b0", "Exchange"))


def test_i0_anywhere():
    assert check_proof(node("p0, 0, b1 |- b0", "I0"))
    with pytest.raises(RuleError):
        check_proof(node("p0, b1 |- b0", "I0"))


def test_tc():
    good = node("b1 |- b1", "TC", search_proof("b1, b0 |- b1"), search_proof("b1, !b0 |- b1"))
    assert check_proof(good)
    # the case split must be on the same test in the same place
    shifted = node("b1 |- b1", "TC", search_proof("b1, b0 |- b1"), search_proof("!b0, b1 |- b1"))
    with pytest.raises(RuleError):
        check_proof(shifted)


def test_tc_rejects_non_negation():
    bad = node("b1 |- b1", "TC", search_proof("b1, b0 |- b1"), search_proof("b1, b0 |- b1"))
    with pytest.raises(RuleError):
        check_proof(bad)


def test_cut():
    first = node("b0 |- b0", "Id")
    second = search_proof("b0, b0 |- b0")
    assert check_proof(node("b0 |- b0", "Cut", first, second, formula=b0))
    with pytest.raises(RuleError):
        check_proof(node("b0 |- b0", "Cut", first, second, formula=b1))


def test_iimp_orientation():
    prem = search_proof("b0, p0, b1 |- b1")
    assert check_proof(node("b0, p0 => b1, p0 |- b1", "IImp", prem))
    # the mirrored order is not an instance
    with pytest.raises(RuleError):
        check_proof(node("b0, p0, p0 => b1 |- b1", "IImp", prem))


def test_otimes_pair():
    prem = search_proof("b0, b1 |- b0")
    intro = node("b0 ; b1 |- b0", "IOtimes", prem)
    assert check_proof(intro)
    assert check_proof(node("b0, b1 |- b0", "EOtimes", intro))


def test_oplus_rules():
    left, right = search_proof("b0 ; b1 |- b0"), search_proof("b0 ; (b0 => 0 => b0) |- b0")
    assert check_proof(node("b0 ; b1 + b0 ; (b0 => 0 => b0) |- b0", "IOplus", left, right))
    top = node("b0 ; b1 + b0 ; (b0 => 0 => b0) |- b0", "IOplus", left, right)
    assert check_proof(node("b0 ; b1 |- b0", "EOplus1", top))
    assert check_proof(node("b0 ; (b0 => 0 => b0) |- b0", "EOplus2", top))
    with pytest.raises(RuleError):
        check_proof(node("b0 ; b1 |- b0", "EOplus2", top))


def test_plus_rules():
    body = search_proof("p0^+ => b0, p0 |- b0")
    inv = search_proof("p0^+ => b0, p0 |- p0^+ => b0")
    assert body is not None and inv is not None
    ip = node("p0^+ => b0, p0^+ |- b0", "IPlus", body, inv)
    assert check_proof(ip)
    assert check_proof(node("p0^+ => b0, p0^+, p0^+ |- b0", "CCPlus", ip))
    assert check_proof(node("p0^+ => b0, p0 |- b0", "EPlus", ip))


def test_iplus_needs_formula_context():
    prem = search_proof("b0, p0, 0 |- b0")
    with pytest.raises(RuleError):
        check_proof(node("b0, p0, 0, p0^+ |- b0", "IPlus", prem, prem))


def test_weakening():
    assert check_proof(node("b0, p1 => b1 |- b0", "Wf", node("b0 |- b0", "Id")))
    assert check_proof(node("p0, b0 |- b0", "Wp", node("b0 |- b0", "Id")))
    # Wp only at the left end
    with pytest.raises(RuleError):
        check_proof(node("b0, p0 |- b0", "Wp", node("b0 |- b0", "Id")))
    # Wf only drops formulas
    with pytest.raises(RuleError):
        check_proof(node("b0, p0 |- b0", "Wf", node("b0 |- b0", "Id")))


def test_inst_position_is_honoured():
    assert check_proof(node("b0, b0 |- b0", "Wf", node("b0 |- b0", "Id"), pos=1))
    with pytest.raises(RuleError):
        check_proof(node("b0, b0 |- b0", "Wf", node("b0 |- b0", "Id"), pos=5))


def test_json_round_trip():
    pt = search_proof("b0, p0 => b1, p0 |- b1")
    back = ProofTree.from_json(json.dumps(pt.to_json()))
    assert back == pt and check_proof(back)


# search

def test_search_examples():
    assert search_proof("b0 |- b0").rule == "Id"
    pt = search_proof("|- 1")
    assert pt.rule == "RImp" and pt.premises[0].rule == "I0"
    pt = search_proof("b0, p0 => b1, p0 |- b1", max_depth=6)
    assert pt is not None and "IImp" in pt.rules_used() and pt.depth() <= 6


def test_search_fails_on_invalid():
    assert search_proof("p0 |- b0", max_depth=8) is None
    assert search_proof("b0, p0 |- b0", max_depth=8) is None


def test_search_uses_lemmas_for_cut():
    seq = parse_sequent("b0 |- b0")
    pt = search_proof(seq, lemmas=["b0"])
    assert check_proof(pt)


def test_while_goal():
    loop = pr.encode_while(pr.While(b0, pr.Action(0)))
    seq = s.Sequent((), s.Imp(s.Seq(b0, loop), s.neg(b0)))
    pt = search_proof(seq)
    assert pt is not None and check_proof(pt)


GOALS = [
    "b0, 0, p0 |- b1", "!!b0 |- b0", "p0 => p1 => b2 |- p0 ; p1 => b2",
    "p0 + p1 => b0 |- p0 => b0", "p0^+ => b0 |- p0^+ => p0^+ => b0",
    "b0, (b1 ; p0 ; b0)^* |- b0", "b0 ; (!b0 ; p0 + b0) |- b0",
]


@pytest.mark.parametrize("goal", GOALS)
def test_search_results_check(goal):
    pt = search_proof(goal)
    assert pt is not None and check_proof(pt)
    assert pt.rules_used() <= set(ps.RULES)


# soundness of checked proofs

def _models(seq, n, k, seed=0):
    rng = random.Random(seed)
    vs = sorted(s.variables(seq), key=s.var_name)
    for _ in range(k):
        yield rm.random_model(rng, rng.randint(1, n), vs)


@pytest.mark.parametrize("goal", GOALS + ["b0, p0 => b1, p0 |- b1", "|- 1"])
def test_checked_proofs_are_valid(goal):
    pt = search_proof(goal)
    for M in _models(pt.conclusion, 3, 200):
        assert rm.sequent_valid(pt.conclusion, M)


@pytest.mark.parametrize("goal", GOALS[:4])
def test_checked_proofs_hold_algebraically(goal):
    eq = tr_sequent(search_proof(goal).conclusion)
    for A in skat_star_algebras(3):
        assert check_quasi(A, eq) is None
    A = full_relational_algebra(1)
    assert check_quasi(A, eq) is None


def _derive(rng, depth):
    """A random derivation built forwards from axioms, one rule per level."""
    S = s.Sequent
    if depth == 0:
        if rng.random() < 0.5:
            b = random_test(rng, 2)
            return ProofTree(S((b,), b), "Id")
        env = tuple(random_program(rng, 1) for _ in range(rng.randrange(3)))
        k = rng.randrange(len(env) + 1)
        return ProofTree(S(env[:k] + (s.ZERO,) + env[k:], random_formula(rng, 2)), "I0", (), {"pos": k})
    pt = _derive(rng, depth - 1)
    env, f = pt.conclusion.antecedent, pt.conclusion.succedent
    n = len(env)
    moves = []
    for i in range(n + 1):
        g = random_formula(rng, 1)
        moves.append(("Wf", (pt,), S(env[:i] + (g,) + env[i:], f)))
    moves.append(("Wp", (pt,), S((random_program(rng, 1),) + env, f)))
    if n and s.is_program(env[-1]):
        moves.append(("RImp", (pt,), S(env[:-1], s.Imp(env[-1], f))))
    for i in range(n - 1):
        a, b = env[i], env[i + 1]
        if s.is_program(a) and s.is_program(b):
            moves.append(("IOtimes", (pt,), S(env[:i] + (s.Seq(a, b),) + env[i + 2:], f)))
        if s.is_program(a) and s.is_formula(b):
            moves.append(("IImp", (pt,), S(env[:i] + (s.Imp(a, b), a) + env[i + 2:], f)))
    for i, t in enumerate(env):
        if isinstance(t, s.Seq):
            moves.append(("EOtimes", (pt,), S(env[:i] + (t.lhs, t.rhs) + env[i + 1:], f)))
        if isinstance(t, s.Plus):
            moves.append(("EOplus1", (pt,), S(env[:i] + (t.lhs,) + env[i + 1:], f)))
            moves.append(("EOplus2", (pt,), S(env[:i] + (t.rhs,) + env[i + 1:], f)))
        if isinstance(t, s.TransClos):
            moves.append(("EPlus", (pt,), S(env[:i] + (t.arg,) + env[i + 1:], f)))
            moves.append(("CCPlus", (pt,), S(env[:i] + (t, t) + env[i + 1:], f)))
        if s.is_program(t):
            moves.append(("IOplus", (pt, pt), S(env[:i] + (s.Plus(t, t),) + env[i + 1:], f)))
    # case split on a fresh test, each branch by weakening
    b, i = random_test(rng, 1), rng.randrange(n + 1)
    yes = ProofTree(S(env[:i] + (b,) + env[i:], f), "Wf", (pt,), {"pos": i})
    no = ProofTree(S(env[:i] + (s.neg(b),) + env[i:], f), "Wf", (pt,), {"pos": i})
    moves.append(("TC", (yes, no), S(env, f)))
    # cut on the succedent itself
    again = ProofTree(S(env + (f,), f), "Wf", (pt,), {"pos": n})
    moves.append(("Cut", (pt, again), S(env, f)))
    if n == 2 and s.is_formula(env[0]) and s.is_program(env[1]):
        inv = search_proof(S(env, env[0]), max_depth=5)
        if inv is not None:
            moves.append(("IPlus", (pt, inv), S((env[0], s.TransClos(env[1])), f)))
    rule, prems, concl = rng.choice(moves)
    return ProofTree(concl, rule, prems)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_forward_derivations_are_valid(seed, depth):
    rng = random.Random(seed)
    pt = _derive(rng, depth)
    assert check_proof(pt)
    seq = pt.conclusion
    eq = tr_sequent(seq)
    for M in _models(seq, 3, 20, seed=seed):
        assert rm.sequent_valid(seq, M)
        asg = M.skat_assignment()
        assert rm.eval_skat(eq.lhs, M.W, asg) <= rm.eval_skat(eq.rhs, M.W, asg)


# derived rules

def test_library():
    lib = ps.derived_rules()
    assert {"star_intro", "star_unfold", "hoare_seq", "hoare_if", "hoare_while"} <= set(lib)
    assert ps.derived_rules(()) == {}


def test_star_templates():
    p = parse_term("b0 ; b1")
    unit = search_proof("b0, 1 |- b0")
    plus = search_proof("b0, (b0 ; b1)^+ |- b0")
    t = ps.star_intro((b0,), p, (), b0, unit, plus)
    assert t.conclusion == parse_sequent("b0, (b0 ; b1)^* |- b0") and check_proof(t)
    u = ps.star_unfold((b0,), p, (), b0, t)
    assert u.conclusion == parse_sequent("b0, b0 ; b1 |- b0") and check_proof(u)
    v = ps.star_unit((b0,), p, (), b0, t)
    assert v.conclusion == parse_sequent("b0, 1 |- b0") and check_proof(v)


def test_hoare_seq_template():
    h = parse_term("(p0 + p1)^+ => b0")
    first = search_proof(s.Sequent((h, p0), h))
    second = search_proof(s.Sequent((h, p1), h))
    t = ps.hoare_seq(h, p0, h, p1, h, first, second)
    assert t.conclusion == s.Sequent((h, s.Seq(p0, p1)), h)
    assert check_proof(t) and "Cut" in t.rules_used()


def test_hoare_if_template():
    g = parse_term("(p0 + p1)^+ => b0")
    then_ = search_proof(s.Sequent((g, s.Seq(b1, p0)), g))
    else_ = search_proof(s.Sequent((g, s.Seq(s.neg(b1), p1)), g))
    t = ps.hoare_if(g, b1, p0, p1, g, then_, else_)
    prog = pr.encode_while(pr.If(b1, pr.Action(0), pr.Action(1)))
    assert t.conclusion == s.Sequent((g, prog), g) and check_proof(t)


def test_hoare_while_template():
    g = parse_term("p0^+ => b0")
    body = search_proof(s.Sequent((g, s.Seq(b1, p0)), g))
    t = ps.hoare_while(g, b1, p0, body)
    loop = pr.encode_while(pr.While(b1, pr.Action(0)))
    assert t.conclusion == s.Sequent((g, loop), g)
    assert check_proof(t) and "IPlus" in t.rules_used()


def test_hoare_while_with_test_invariant():
    body = search_proof("b0, b1 ; (b0 ; b1) |- b0")
    t = ps.hoare_while(b0, b1, parse_term("b0 ; b1"), body)
    assert check_proof(t)


def test_template_with_bad_premise_is_rejected():
    g = parse_term("p0^+ => b0")
    wrong = search_proof("b0 |- b0")
    with pytest.raises(RuleError):
        check_proof(ps.hoare_while(g, b1, p0, wrong))
