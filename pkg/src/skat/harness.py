"""End-to-end checks tying the calculus, relational models and algebras together.

* ``lemma1_check``: the M-interpretation of an S expression equals the
  relational value of its translation.
* ``lemma2_rule_check``: each rule, read through the translation, is a
  quasi-equation; it is checked on mined finite algebras and on random
  instances in full relational algebras.
* ``run_embedding_corpus``: provable sequents have checked proofs and
  translations that hold everywhere sampled; refutable ones have a
  countermodel whose induced valuation refutes the translation.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from . import proofsys as ps
from . import relmodel as rm
from .finalg import TheoryLevel, check_quasi, check_star_continuity, mined_up_to
from .syntax import slang as s
from .syntax import terms as tm
from .translate import tr, tr_sequent

# interpretation against translation


def lemma1_check(M: rm.RelModel, alpha) -> bool:
    """The model's interpretation of ``alpha`` equals the value of its translation."""
    if isinstance(alpha, str):
        alpha = s.parse_s(alpha)
    lhs = rm.interpret_s(alpha, M)
    rhs = rm.eval_skat(tr(alpha), M.W, M.skat_assignment())
    return lhs == rhs


def random_test(rng: random.Random, depth: int, n_tests=2):
    if depth <= 0 or rng.random() < 0.3:
        return s.ZERO if rng.random() < 0.15 else s.TestVar(rng.randrange(n_tests))
    return s.Imp(random_test(rng, depth - 1, n_tests), random_test(rng, depth - 1, n_tests))


def random_program(rng: random.Random, depth: int, n_tests=2, n_progs=2):
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.3:
            return random_test(rng, 0, n_tests)
        return s.ProgVar(rng.randrange(n_progs))
    k = rng.randrange(4)
    if k == 0:
        return random_test(rng, depth, n_tests)
    if k == 3:
        return s.TransClos(random_program(rng, depth - 1, n_tests, n_progs))
    op = s.Plus if k == 1 else s.Seq
    return op(random_program(rng, depth - 1, n_tests, n_progs),
              random_program(rng, depth - 1, n_tests, n_progs))


def random_formula(rng: random.Random, depth: int, n_tests=2, n_progs=2):
    if depth <= 0 or rng.random() < 0.3:
        return random_test(rng, depth, n_tests)
    return s.Imp(random_program(rng, depth - 1, n_tests, n_progs),
                 random_formula(rng, depth - 1, n_tests, n_progs))


def random_expression(rng: random.Random, depth: int = 4, n_tests=2, n_progs=2):
    """A random test, program, formula or environment of depth at most ``depth``."""
    k = rng.randrange(4)
    if k == 0:
        return random_test(rng, depth, n_tests)
    if k == 1:
        return random_program(rng, depth, n_tests, n_progs)
    if k == 2:
        return random_formula(rng, depth, n_tests, n_progs)
    items = []
    for _ in range(rng.randrange(4)):
        gen = random_program if rng.random() < 0.5 else random_formula
        items.append(gen(rng, max(depth - 1, 0), n_tests, n_progs))
    return tuple(items)


@dataclass
class Lemma1Report:
    samples: int
    failures: list = field(default_factory=list)  # (model json, expression text)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures


def lemma1_property(samples: int = 1000, seed: int = 0, max_w: int = 3, depth: int = 4) -> Lemma1Report:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    rep = Lemma1Report(samples)
    for _ in range(samples):
        alpha = random_expression(rng, depth)
        n = rng.randint(1, max_w)
        M = rm.random_model(rng, n, sorted(s.variables(alpha), key=s.var_name))
        if not lemma1_check(M, alpha):
            rep.failures.append((M.to_json(), s.show(alpha)))
    rep.seconds = time.perf_counter() - t0
    return rep


# rule validity: one quasi-equation per rule
#
# Roles: g, d are the translated outer environments, p, q programs, c(u) a
# test, c(h), c(f) formulas. Environments fold left, so G, a, D is g;a;d.

@dataclass(frozen=True)
class RuleValidityCheck:
    rule: str
    text: str
    # relational sampling: (variable, term) pairs applied in order so the
    # premises hold; about half of the samples use them
    fits: tuple = ()

    @property
    def quasi(self) -> tm.QuasiEquation:
        return _parse_quasi(self.text)


_parse_quasi = lru_cache(maxsize=None)(tm.parse_quasi)

NEG_U = "c(c(u) -> e(c(0)))"
PLUS_P = "(p;p^*)"

RULE_CHECKS = (
    RuleValidityCheck("Id", "c(c(u)) <= c(u)"),
    RuleValidityCheck("I0", "c(g;c(0);d) <= c(f)"),
    RuleValidityCheck("TC", f"c(g;c(u);d) <= c(f) & c(g;{NEG_U};d) <= c(f) ==> c(g;d) <= c(f)",
                      (("f", f"g;c(u);d + g;{NEG_U};d"),)),
    RuleValidityCheck("Cut", "c(g) <= c(h) & c(g;c(h);d) <= c(f) ==> c(g;d) <= c(f)",
                      (("h", "g"), ("f", "g;c(h);d"))),
    RuleValidityCheck("RImp", "c(g;p) <= c(f) ==> c(g) <= c(p -> e(c(f)))", (("f", "g;p"),)),
    RuleValidityCheck("IImp", "c(g;p;c(f);d) <= c(h) ==> c(g;c(p -> e(c(f)));p;d) <= c(h)",
                      (("h", "g;p;c(f);d"),)),
    RuleValidityCheck("IOtimes", "c(g;p;q;d) <= c(f) ==> c(g;(p;q);d) <= c(f)", (("f", "g;p;q;d"),)),
    RuleValidityCheck("EOtimes", "c(g;(p;q);d) <= c(f) ==> c(g;p;q;d) <= c(f)", (("f", "g;(p;q);d"),)),
    RuleValidityCheck("IOplus", "c(g;p;d) <= c(f) & c(g;q;d) <= c(f) ==> c(g;(p+q);d) <= c(f)",
                      (("f", "g;p;d + g;q;d"),)),
    RuleValidityCheck("EOplus1", "c(g;(p+q);d) <= c(f) ==> c(g;p;d) <= c(f)", (("f", "g;(p+q);d"),)),
    RuleValidityCheck("EOplus2", "c(g;(p+q);d) <= c(f) ==> c(g;q;d) <= c(f)", (("f", "g;(p+q);d"),)),
    RuleValidityCheck("IPlus", f"c(c(h);p) <= c(f) & c(c(h);p) <= c(h) ==> c(c(h);{PLUS_P}) <= c(f)",
                      (("h", "c(h);p^*"), ("f", "c(h);p"))),
    RuleValidityCheck("EPlus", f"c(g;{PLUS_P};d) <= c(f) ==> c(g;p;d) <= c(f)", (("f", f"g;{PLUS_P};d"),)),
    RuleValidityCheck("CCPlus", f"c(g;{PLUS_P};d) <= c(f) ==> c(g;{PLUS_P};{PLUS_P};d) <= c(f)",
                      (("f", f"g;{PLUS_P};d"),)),
    RuleValidityCheck("Wf", "c(g;d) <= c(h) ==> c(g;c(f);d) <= c(h)", (("h", "g;d"),)),
    RuleValidityCheck("Wp", "c(g) <= c(f) ==> c(p;g) <= c(f)", (("f", "g"),)),
)
RULE_CHECK = {rc.rule: rc for rc in RULE_CHECKS}


@dataclass
class RuleReport:
    rule: str
    algebras: int = 0  # finite algebras checked exhaustively
    relational_samples: int = 0
    nonvacuous: int = 0  # relational samples where every premise held
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.witnesses

    def line(self) -> str:
        status = "ok" if self.ok else f"{len(self.witnesses)} witness(es)"
        return (f"{self.rule:8s} {status:14s} finite={self.algebras} "
                f"relational={self.relational_samples} (premises met {self.nonvacuous})")


@lru_cache(maxsize=None)
def skat_star_algebras(max_size: int = 3) -> tuple:
    """Mined SKAT algebras up to ``max_size`` that pass the finite star-continuity check."""
    return tuple(A for A in mined_up_to(max_size, TheoryLevel.SKAT) if check_star_continuity(A).ok)


def _holds_rel(eq: tm.Equation, n, asg) -> bool:
    lhs, rhs = rm.eval_skat(eq.lhs, n, asg), rm.eval_skat(eq.rhs, n, asg)
    return lhs <= rhs if eq.leq else lhs == rhs


def lemma2_rule_check(rule, algebras=None, samples: int = 1000, W: int = 3, seed: int = 0,
                      max_size: int = 3) -> RuleReport:
    """Check one rule's quasi-equation on finite algebras and relational samples."""
    rc = RULE_CHECK[rule] if isinstance(rule, str) else rule
    q = rc.quasi
    t0 = time.perf_counter()
    rep = RuleReport(rc.rule)
    if algebras is None:
        algebras = skat_star_algebras(max_size)
    for A in algebras:
        w = check_quasi(A, q)
        rep.algebras += 1
        if w is not None:
            rep.witnesses.append({"algebra": A.to_json(), "assignment": w.assignment,
                                  "lhs": w.lhs, "rhs": w.rhs})
    rng = random.Random(f"{seed}:{rc.rule}")
    names = sorted(tm.variables(q))
    fits = [(v, tm.parse_skat(t)) for v, t in rc.fits]
    for i in range(samples):
        asg = {v: rm.random_relation(rng, W) for v in names}
        if fits and i % 2 == 0:
            for v, t in fits:
                asg[v] = rm.eval_skat(t, W, asg)
        rep.relational_samples += 1
        if not all(_holds_rel(e, W, asg) for e in q.premises):
            continue
        rep.nonvacuous += 1
        if not _holds_rel(q.conclusion, W, asg):
            rep.witnesses.append({"W": W, "assignment": {k: r.pairs() for k, r in asg.items()}})
    rep.seconds = time.perf_counter() - t0
    return rep


def lemma2_suite(samples: int = 1000, W: int = 3, seed: int = 0, max_size: int = 3) -> list:
    algebras = skat_star_algebras(max_size)
    return [lemma2_rule_check(rc, algebras, samples, W, seed) for rc in RULE_CHECKS]


# embedding corpus

@dataclass
class CorpusEntry:
    sequent: s.Sequent
    expect: str  # "provable" | "refutable"
    proof: ps.ProofTree | None = None
    model: rm.RelModel | None = None
    bounds: dict = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        if isinstance(self.sequent, str):
            self.sequent = s.parse_sequent(self.sequent)
        if self.expect not in ("provable", "refutable"):
            raise ValueError(f"expect must be 'provable' or 'refutable', got {self.expect!r}")
        if self.expect == "provable" and self.model is not None:
            raise ValueError("a provable entry cannot carry a countermodel")
        if self.expect == "refutable" and self.proof is not None:
            raise ValueError("a refutable entry cannot carry a proof")

    def to_json(self) -> dict:
        out = {"sequent": s.show(self.sequent), "expect": self.expect}
        if self.proof is not None:
            out["proof"] = self.proof.to_json()
        if self.model is not None:
            out["model"] = self.model.to_json()
        if self.bounds:
            out["bounds"] = dict(self.bounds)
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data) -> "CorpusEntry":
        if isinstance(data, str):
            data = json.loads(data)
        proof = ps.ProofTree.from_json(data["proof"]) if data.get("proof") else None
        model = rm.RelModel.from_json(data["model"]) if data.get("model") else None
        return cls(data["sequent"], data["expect"], proof, model, dict(data.get("bounds", {})),
                   data.get("note", ""))


def load_corpus(path=None) -> list:
    """Read a JSON-lines corpus; the shipped one by default."""
    if path is None:
        text = resources.files("skat").joinpath("data/corpus.jsonl").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return [CorpusEntry.from_json(line) for line in text.splitlines() if line.strip()]


def save_corpus(entries, path):
    with open(path, "w") as fh:
        for e in entries:
            fh.write(json.dumps(e.to_json()) + "\n")


@dataclass
class CorpusConfig:
    max_size: int = 3  # mined algebras up to this size
    rel_samples: int = 200  # random valuations per relational carrier
    rel_sizes: tuple = (1, 2, 3)
    exhaustive_limit: int = 4096  # exhaustive relational check below this many valuations
    seed: int = 0


@dataclass
class EntryResult:
    index: int
    sequent: str
    expect: str
    ok: bool
    detail: str = ""
    algebras: int = 0
    relational: int = 0
    model: dict | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class CorpusReport:
    results: list
    seconds: float = 0.0

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def summary(self) -> str:
        lines = []
        for r in self.results:
            mark = "ok  " if r.ok else "FAIL"
            lines.append(f"{mark} [{r.expect:9s}] {r.sequent}  {r.detail}")
        good = sum(r.ok for r in self.results)
        lines.append(f"{good}/{len(self.results)} entries pass ({self.seconds:.1f}s)")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"ok": self.ok, "seconds": self.seconds, "entries": [r.to_json() for r in self.results]}


def _relational_refute(eq: tm.Equation, cfg: CorpusConfig):
    """A relational valuation refuting ``eq``, or None; also returns the count checked."""
    names = sorted(tm.variables(eq))
    rng = random.Random(cfg.seed)
    checked = 0
    for n in cfg.rel_sizes:
        total = (1 << (n * n)) ** len(names)
        if total <= cfg.exhaustive_limit:
            rels = rm.relations_table(n)
            pool = (dict(zip(names, combo)) for combo in itertools.product(rels, repeat=len(names)))
        else:
            pool = ({v: rm.random_relation(rng, n) for v in names} for _ in range(cfg.rel_samples))
        for asg in pool:
            checked += 1
            if not _holds_rel(eq, n, asg):
                return (n, asg), checked
    return None, checked


def check_entry(i, e: CorpusEntry, cfg: CorpusConfig) -> EntryResult:
    seq = e.sequent
    eq = tr_sequent(seq)
    res = EntryResult(i, s.show(seq), e.expect, False)
    if e.expect == "provable":
        proof = e.proof
        if proof is None:
            proof = ps.search_proof(seq, e.bounds.get("depth", 12), e.bounds.get("lemmas", ()))
            if proof is None:
                res.detail = "no proof supplied and none found"
                return res
        if proof.conclusion != seq:
            res.detail = f"proof concludes {s.show(proof.conclusion)}"
            return res
        try:
            ps.check_proof(proof)
        except ps.RuleError as err:
            res.detail = f"proof rejected: {err}"
            return res
        for A in skat_star_algebras(cfg.max_size):
            res.algebras += 1
            w = check_quasi(A, eq)
            if w is not None:
                res.detail = f"translation fails in a finite algebra: {w.describe(A)}"
                return res
        bad, res.relational = _relational_refute(eq, cfg)
        if bad is not None:
            res.detail = f"translation fails relationally on {bad[0]} points"
            return res
        res.ok = True
        res.detail = (f"proof checked ({proof.size()} nodes); translation holds in "
                      f"{res.algebras} finite algebras and {res.relational} relational valuations")
        return res

    M = e.model
    if M is None:
        b = e.bounds
        M = rm.find_countermodel(seq, b.get("max_w", 3), b.get("budget", rm.DEFAULT_BUDGET),
                                 b.get("seed", cfg.seed))
        if M is None:
            res.detail = "no countermodel found within bounds"
            return res
    res.model = M.to_json()
    if rm.sequent_valid(seq, M):
        res.detail = "supplied model does not refute the sequent"
        return res
    asg = M.skat_assignment()
    if _holds_rel(eq, M.W, asg):
        res.detail = "translation holds under the induced valuation"
        return res
    res.ok = True
    res.relational = 1
    res.detail = f"countermodel on {M.W} point(s) refutes the sequent and its translation"
    return res


def run_embedding_corpus(corpus=None, cfg: CorpusConfig | None = None) -> CorpusReport:
    cfg = cfg or CorpusConfig()
    if corpus is None:
        corpus = load_corpus()
    t0 = time.perf_counter()
    results = [check_entry(i, e, cfg) for i, e in enumerate(corpus)]
    return CorpusReport(results, time.perf_counter() - t0)
