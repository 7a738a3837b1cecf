import json
import random

import pytest
from hypothesis import given, settings

from skat import harness as h
from skat import proofsys as ps
from skat import relmodel as rm
from skat.finalg import check_star_continuity
from skat.relmodel import Relation
from skat.syntax import slang as s

from strategies import s_terms


def model(W, **val):
    return rm.RelModel(W, {s.var_from_name(k): Relation.from_pairs(W, v) for k, v in val.items()})


# interpretation against translation

def test_interpretation_examples():
    M = model(2, b0=[(0, 0)], p0=[(0, 1), (1, 1)])
    for text in ("b0 => 0", "p0 ; b0", "p0^+ => b0", "p0 + b0", "b0, p0 => b0, p0"):
        assert h.lemma1_check(M, text)
    assert h.lemma1_check(M, ())


@settings(max_examples=200)
@given(s_terms)
def test_interpretation_on_generated_terms(t):
    M = rm.random_model(random.Random(hash(s.show(t))), 2,
                        sorted(s.variables(t), key=s.var_name))
    assert h.lemma1_check(M, t)


def test_interpretation_property():
    rep = h.lemma1_property(300, seed=7)
    assert rep.ok and rep.samples == 300


def test_generators_are_seeded():
    a = [s.show(h.random_expression(random.Random(3))) for _ in range(5)]
    b = [s.show(h.random_expression(random.Random(3))) for _ in range(5)]
    assert a == b


# rule validity

def test_one_check_per_rule():
    assert set(h.RULE_CHECK) == set(ps.RULES)


@pytest.mark.parametrize("rule", sorted(ps.RULES))
def test_rule_is_valid(rule):
    rep = h.lemma2_rule_check(rule, samples=300)
    assert rep.ok, rep.witnesses[:1]
    assert rep.algebras >= 1 and rep.relational_samples == 300
    # the fits make sure the premises are not vacuous
    assert rep.nonvacuous >= 100
    assert rule in rep.line()


CONTROLS = [
    # Wp on the right end
    h.RuleValidityCheck("Wp-right", "c(g) <= c(f) ==> c(g;p) <= c(f)", (("f", "g"),)),
    # IImp with the program in front of the box
    h.RuleValidityCheck("IImp-mirror", "c(g;p;c(f);d) <= c(h) ==> c(g;p;c(p -> e(c(f)));d) <= c(h)",
                        (("h", "g;p;c(f);d"),)),
    # IPlus without the invariant premise
    h.RuleValidityCheck("IPlus-weak", f"c(c(h);p) <= c(f) ==> c(c(h);{h.PLUS_P}) <= c(f)",
                        (("f", "c(h);p"),)),
    # exchange of two programs
    h.RuleValidityCheck("swap", "c(g;p;q) <= c(f) ==> c(g;q;p) <= c(f)", (("f", "g;p;q"),)),
]


@pytest.mark.parametrize("rc", CONTROLS, ids=lambda rc: rc.rule)
def test_unsound_rules_are_caught(rc):
    rep = h.lemma2_rule_check(rc, samples=1000)
    assert not rep.ok
    w = next(w for w in rep.witnesses if "W" in w)
    asg = {k: Relation.from_pairs(w["W"], v) for k, v in w["assignment"].items()}
    q = rc.quasi
    assert all(h._holds_rel(e, w["W"], asg) for e in q.premises)
    assert not h._holds_rel(q.conclusion, w["W"], asg)


def test_rule_suite_shape():
    reps = h.lemma2_suite(samples=50)
    assert [r.rule for r in reps] == [rc.rule for rc in h.RULE_CHECKS]
    assert all(r.ok for r in reps)


def test_skat_algebras_are_star_continuous():
    algs = h.skat_star_algebras(3)
    assert len(algs) >= 2
    assert all(check_star_continuity(A).ok for A in algs)


# corpus

def test_shipped_corpus():
    corpus = h.load_corpus()
    assert len(corpus) >= 20
    kinds = {e.expect for e in corpus}
    assert kinds == {"provable", "refutable"}
    used = set()
    for e in corpus:
        if e.proof is not None:
            used |= e.proof.rules_used()
    assert used == set(ps.RULES)


def test_corpus_round_trip(tmp_path):
    corpus = h.load_corpus()
    path = tmp_path / "c.jsonl"
    h.save_corpus(corpus, path)
    back = h.load_corpus(path)
    assert [e.to_json() for e in back] == [e.to_json() for e in corpus]


def test_corpus_passes():
    rep = h.run_embedding_corpus()
    assert rep.ok, rep.summary()
    assert "entries pass" in rep.summary()
    json.dumps(rep.to_json())


def test_refutable_entry_with_supplied_model():
    M = model(2, p0=[(0, 1)], b0=[])
    e = h.CorpusEntry("p0 |- b0", "refutable", model=M)
    r = h.check_entry(0, e, h.CorpusConfig())
    assert r.ok and r.model == M.to_json()


def test_refutable_entry_by_search():
    e = h.CorpusEntry("b0, p0 |- b0", "refutable", bounds={"max_w": 2})
    assert h.check_entry(0, e, h.CorpusConfig()).ok


def test_entry_without_proof_is_searched():
    e = h.CorpusEntry("b0 ; b1 |- b1", "provable")
    assert h.check_entry(0, e, h.CorpusConfig()).ok


def test_bad_entries_are_reported():
    cfg = h.CorpusConfig()
    # valid sequent listed as refutable
    r = h.check_entry(0, h.CorpusEntry("b0 |- b0", "refutable", bounds={"max_w": 2}), cfg)
    assert not r.ok and "no countermodel" in r.detail
    # model that does not refute
    r = h.check_entry(0, h.CorpusEntry("p0 |- b0", "refutable", model=model(1, p0=[], b0=[])), cfg)
    assert not r.ok and "does not refute" in r.detail
    # proof of another sequent
    pt = ps.search_proof("b1 |- b1")
    r = h.check_entry(0, h.CorpusEntry("b0 |- b0", "provable", pt), cfg)
    assert not r.ok and "concludes" in r.detail
    # rejected proof
    bad = ps.ProofTree(s.parse_sequent("b0, p0 |- b0"), "Id")
    r = h.check_entry(0, h.CorpusEntry("b0, p0 |- b0", "provable", bad), cfg)
    assert not r.ok and "rejected" in r.detail
    # unprovable sequent with no proof
    r = h.check_entry(0, h.CorpusEntry("p0 |- b0", "provable", bounds={"depth": 5}), cfg)
    assert not r.ok


def test_entry_validation():
    with pytest.raises(ValueError):
        h.CorpusEntry("b0 |- b0", "maybe")
    with pytest.raises(ValueError):
        h.CorpusEntry("b0 |- b0", "refutable", proof=ps.search_proof("b0 |- b0"))
