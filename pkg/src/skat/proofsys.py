"""Sequent calculus for S: proof trees, a checker, and bounded backward search.

Rule schemas (premises / conclusion, environments matched positionally)::

    Id      -                              b |- b
    I0      -                              G, 0, D |- f
    TC      G, b, D |- f   G, !b, D |- f   G, D |- f
    Cut     G |- g         G, g, D |- f    G, D |- f
    RImp    G, p |- f                      G |- p => f
    IImp    G, p, f, D |- g                G, p => f, p, D |- g
    IOtimes G, p, q, D |- f                G, p ; q, D |- f
    EOtimes G, p ; q, D |- f               G, p, q, D |- f
    IOplus  G, p, D |- f   G, q, D |- f    G, p + q, D |- f
    EOplus1 G, p + q, D |- f               G, p, D |- f
    EOplus2 G, p + q, D |- f               G, q, D |- f
    IPlus   g, p |- f      g, p |- g       g, p^+ |- f
    EPlus   G, p^+, D |- f                 G, p, D |- f
    CCPlus  G, p^+, D |- f                 G, p^+, p^+, D |- f
    Wf      G, D |- g                      G, f, D |- g
    Wp      G |- f                         p, G |- f
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .syntax import slang as s

ARITY = {
    "Id": 0, "I0": 0,
    "RImp": 1, "IImp": 1, "EOtimes": 1, "IOtimes": 1, "EOplus1": 1, "EOplus2": 1,
    "EPlus": 1, "CCPlus": 1, "Wf": 1, "Wp": 1,
    "TC": 2, "Cut": 2, "IOplus": 2, "IPlus": 2,
}
RULES = tuple(ARITY)


@dataclass(frozen=True)
class ProofTree:
    conclusion: s.Sequent
    rule: str
    premises: tuple = ()
    inst: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        if isinstance(self.conclusion, str):
            object.__setattr__(self, "conclusion", s.parse_sequent(self.conclusion))

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)

    def rules_used(self) -> set:
        out = {self.rule}
        for p in self.premises:
            out |= p.rules_used()
        return out

    def to_json(self) -> dict:
        inst = {}
        for k, v in self.inst.items():
            inst[k] = s.show(v) if not isinstance(v, (int, str)) else v
        out = {"rule": self.rule, "conclusion": s.show(self.conclusion)}
        if inst:
            out["inst"] = inst
        out["premises"] = [p.to_json() for p in self.premises]
        return out

    @classmethod
    def from_json(cls, data) -> "ProofTree":
        if isinstance(data, str):
            data = json.loads(data)
        inst = dict(data.get("inst", {}))
        for k in ("formula", "test"):
            if k in inst and isinstance(inst[k], str):
                inst[k] = s.parse_term(inst[k])
        return cls(s.parse_sequent(data["conclusion"]), data["rule"],
                   tuple(cls.from_json(p) for p in data.get("premises", [])), inst)

    def pretty(self, indent=0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{s.show(self.conclusion)}   ({self.rule})"]
        lines += [p.pretty(indent + 1) for p in self.premises]
        return "\n".join(lines)


class RuleError(ValueError):
    """A node that is not an instance of its rule."""

    def __init__(self, path, rule, message, conclusion=None):
        self.path = tuple(path)
        self.rule = rule
        self.message = message
        self.conclusion = conclusion
        where = "root" + "".join(f".premises[{i}]" for i in self.path)
        concl = f" at '{s.show(conclusion)}'" if conclusion is not None else ""
        super().__init__(f"{where}: ({rule}) {message}{concl}")


# checking

def _positions(inst, lo, hi):
    """Candidate split points, narrowed to ``inst['pos']`` when given."""
    if "pos" in inst:
        p = inst["pos"]
        return [p] if lo <= p <= hi else []
    return range(lo, hi + 1)


def _same_succ(prem, f):
    return prem.conclusion.succedent == f


def _match(node: ProofTree) -> str | None:
    """None if ``node`` is a correct instance of its rule, else the reason."""
    rule = node.rule
    env = node.conclusion.antecedent
    f = node.conclusion.succedent
    P = node.premises
    inst = node.inst
    n = len(env)

    if rule == "Id":
        if n == 1 and env[0] == f and s.is_test(f):
            return None
        return "conclusion must be b |- b for a test b"

    if rule == "I0":
        if any(env[i] == s.ZERO for i in _positions(inst, 0, n - 1) if 0 <= i < n):
            return None
        return "environment contains no 0"

    if rule == "TC":
        p1, p2 = (p.conclusion for p in P)
        if not (p1.succedent == f and p2.succedent == f):
            return "premises must share the conclusion's succedent"
        for i in _positions(inst, 0, n):
            if len(p1.antecedent) != n + 1:
                break
            b = p1.antecedent[i]
            if "test" in inst and inst["test"] != b:
                continue
            if (s.is_test(b) and p1.antecedent == env[:i] + (b,) + env[i:]
                    and p2.antecedent == env[:i] + (s.neg(b),) + env[i:]):
                return None
        return "premises are not G, b, D and G, !b, D for a test b"

    if rule == "Cut":
        p1, p2 = (p.conclusion for p in P)
        g = p1.succedent
        gamma = p1.antecedent
        k = len(gamma)
        if "formula" in inst and inst["formula"] != g:
            return "cut formula differs from the first premise's succedent"
        if (env[:k] == gamma and p2.antecedent == gamma + (g,) + env[k:] and p2.succedent == f):
            return None
        return "premises are not G |- g and G, g, D |- f"

    if rule == "RImp":
        (p1,) = (p.conclusion for p in P)
        if isinstance(f, s.Imp) and p1.antecedent == env + (f.lhs,) and p1.succedent == f.rhs:
            return None
        return "premise must be G, p |- f for conclusion G |- p => f"

    if rule == "IImp":
        (p1,) = (p.conclusion for p in P)
        if p1.succedent != f:
            return "premise and conclusion succedents differ"
        for i in _positions(inst, 0, n - 2):
            imp = env[i]
            if (isinstance(imp, s.Imp) and env[i + 1] == imp.lhs
                    and p1.antecedent == env[:i] + (imp.lhs, imp.rhs) + env[i + 2:]):
                return None
        return "conclusion has no adjacent 'p => f, p' matching the premise G, p, f, D"

    if rule == "IOtimes":
        (p1,) = (p.conclusion for p in P)
        if p1.succedent == f:
            for i in _positions(inst, 0, n - 1):
                t = env[i]
                if isinstance(t, s.Seq) and p1.antecedent == env[:i] + (t.lhs, t.rhs) + env[i + 1:]:
                    return None
        return "premise is not G, p, q, D for a conclusion item p ; q"

    if rule == "EOtimes":
        (p1,) = (p.conclusion for p in P)
        pe = p1.antecedent
        if p1.succedent == f:
            for j in _positions(inst, 0, len(pe) - 1):
                t = pe[j]
                if isinstance(t, s.Seq) and env == pe[:j] + (t.lhs, t.rhs) + pe[j + 1:]:
                    return None
        return "conclusion is not G, p, q, D for a premise item p ; q"

    if rule == "IOplus":
        p1, p2 = (p.conclusion for p in P)
        if p1.succedent == f and p2.succedent == f:
            for i in _positions(inst, 0, n - 1):
                t = env[i]
                if (isinstance(t, s.Plus) and p1.antecedent == env[:i] + (t.lhs,) + env[i + 1:]
                        and p2.antecedent == env[:i] + (t.rhs,) + env[i + 1:]):
                    return None
        return "premises are not G, p, D and G, q, D for a conclusion item p + q"

    if rule in ("EOplus1", "EOplus2"):
        (p1,) = (p.conclusion for p in P)
        pe = p1.antecedent
        if p1.succedent == f:
            for j in _positions(inst, 0, len(pe) - 1):
                t = pe[j]
                if isinstance(t, s.Plus):
                    keep = t.lhs if rule == "EOplus1" else t.rhs
                    if env == pe[:j] + (keep,) + pe[j + 1:]:
                        return None
        return "conclusion does not select the right summand of a premise item p + q"

    if rule == "IPlus":
        p1, p2 = (p.conclusion for p in P)
        if n == 2 and isinstance(env[1], s.TransClos) and s.is_formula(env[0]):
            g, p = env[0], env[1].arg
            if p1.antecedent == (g, p) and p1.succedent == f and p2.antecedent == (g, p) and p2.succedent == g:
                return None
        return "expected premises g, p |- f and g, p |- g for conclusion g, p^+ |- f"

    if rule == "EPlus":
        (p1,) = (p.conclusion for p in P)
        pe = p1.antecedent
        if p1.succedent == f:
            for j in _positions(inst, 0, len(pe) - 1):
                t = pe[j]
                if isinstance(t, s.TransClos) and env == pe[:j] + (t.arg,) + pe[j + 1:]:
                    return None
        return "conclusion is not G, p, D for a premise item p^+"

    if rule == "CCPlus":
        (p1,) = (p.conclusion for p in P)
        pe = p1.antecedent
        if p1.succedent == f:
            for j in _positions(inst, 0, len(pe) - 1):
                t = pe[j]
                if isinstance(t, s.TransClos) and env == pe[:j] + (t, t) + pe[j + 1:]:
                    return None
        return "conclusion is not G, p^+, p^+, D for a premise item p^+"

    if rule == "Wf":
        (p1,) = (p.conclusion for p in P)
        if p1.succedent == f:
            for i in _positions(inst, 0, n - 1):
                if s.is_formula(env[i]) and p1.antecedent == env[:i] + env[i + 1:]:
                    return None
        return "premise is not the conclusion with one formula removed"

    if rule == "Wp":
        (p1,) = (p.conclusion for p in P)
        if n >= 1 and s.is_program(env[0]) and p1.antecedent == env[1:] and p1.succedent == f:
            return None
        return "premise is not the conclusion with its leading program removed"

    return f"unknown rule {rule!r}"


def check_proof(pt: ProofTree, _path=()) -> bool:
    """True if every node is an instance of its rule; raises RuleError otherwise."""
    if pt.rule not in ARITY:
        raise RuleError(_path, pt.rule, "is not a rule of the calculus", pt.conclusion)
    if len(pt.premises) != ARITY[pt.rule]:
        raise RuleError(_path, pt.rule,
                        f"takes {ARITY[pt.rule]} premise(s), got {len(pt.premises)}", pt.conclusion)
    why = _match(pt)
    if why is not None:
        raise RuleError(_path, pt.rule, why, pt.conclusion)
    for i, p in enumerate(pt.premises):
        check_proof(p, _path + (i,))
    return True


def is_valid_proof(pt: ProofTree) -> bool:
    try:
        return check_proof(pt)
    except RuleError:
        return False


# search

@dataclass
class SearchConfig:
    max_depth: int = 12
    lemmas: tuple = ()  # cut formulas the search may use
    max_env: int = 6  # environments longer than this are not grown further


def _tests_in(seq: s.Sequent) -> list:
    seen = []
    for t in list(seq.antecedent) + [seq.succedent]:
        for u in s.subterms(t):
            if s.is_test(u) and u not in seen and u != s.ZERO:
                seen.append(u)
    return seen


def _hull(targets):
    """Targets plus everything reachable by descending through ^+ and +."""
    out, todo = [], list(targets)
    while todo:
        x = todo.pop()
        if x in out:
            continue
        out.append(x)
        if isinstance(x, s.TransClos):
            todo.append(x.arg)
        elif isinstance(x, s.Plus):
            todo += [x.lhs, x.rhs]
    return out


class _Searcher:
    def __init__(self, goal: s.Sequent, cfg: SearchConfig):
        self.cfg = cfg
        self.tests = _tests_in(goal)
        self.failed = {}  # sequent -> largest depth known to fail

    def prove(self, seq, depth):
        if self.failed.get(seq, -1) >= depth:
            return None
        found = self._prove(seq, depth)
        if found is None:
            self.failed[seq] = depth
        return found

    def _first(self, seq, rule, premises, depth, inst):
        """The node if every premise sequent is provable within ``depth - 1``."""
        subs = []
        for p in premises:
            sub = self.prove(p, depth - 1)
            if sub is None:
                return None
            subs.append(sub)
        return ProofTree(seq, rule, tuple(subs), inst)

    def _prove(self, seq, depth):
        env, f = seq.antecedent, seq.succedent
        n = len(env)
        if s.ZERO in env:
            return ProofTree(seq, "I0", (), {"pos": env.index(s.ZERO)})
        if n == 1 and env[0] == f and s.is_test(f):
            return ProofTree(seq, "Id")
        if depth <= 1:
            return None
        S = s.Sequent
        for rule, prems, inst in self._moves(seq):
            node = self._first(seq, rule, prems, depth, inst)
            if node is not None:
                return node
        return None

    def _moves(self, seq):
        """Backward rule applications in a fixed preference order."""
        env, f = seq.antecedent, seq.succedent
        n = len(env)
        S = s.Sequent
        grow = n < self.cfg.max_env

        if isinstance(f, s.Imp) and grow:
            yield "RImp", [S(env + (f.lhs,), f.rhs)], {}
        for i in range(n - 1):
            imp = env[i]
            if isinstance(imp, s.Imp) and env[i + 1] == imp.lhs:
                yield "IImp", [S(env[:i] + (imp.lhs, imp.rhs) + env[i + 2:], f)], {"pos": i}
        for i, t in enumerate(env):
            if isinstance(t, s.Seq) and grow:
                yield "IOtimes", [S(env[:i] + (t.lhs, t.rhs) + env[i + 1:], f)], {"pos": i}
        for i, t in enumerate(env):
            if isinstance(t, s.Plus):
                yield "IOplus", [S(env[:i] + (t.lhs,) + env[i + 1:], f),
                                 S(env[:i] + (t.rhs,) + env[i + 1:], f)], {"pos": i}
        for i in range(n - 1):
            if isinstance(env[i], s.TransClos) and env[i] == env[i + 1]:
                yield "CCPlus", [S(env[:i + 1] + env[i + 2:], f)], {"pos": i}
        if n == 2 and isinstance(env[1], s.TransClos) and s.is_formula(env[0]):
            g, p = env[0], env[1].arg
            yield "IPlus", [S((g, p), f), S((g, p), g)], {}
        # generalising E-rules, only towards a neighbouring implication
        # antecedent or transitive closure, so that IImp or CCPlus can fire
        seen = set()
        for i, t in enumerate(env):
            targets = []
            if i > 0 and isinstance(env[i - 1], s.Imp):
                targets.append(env[i - 1].lhs)
            targets += [env[j] for j in (i - 1, i + 1) if 0 <= j < n and isinstance(env[j], s.TransClos)]
            for x in _hull(targets):
                if isinstance(x, s.TransClos) and x.arg == t:
                    move = ("EPlus", i, x)
                elif isinstance(x, s.Plus) and t in (x.lhs, x.rhs):
                    move = ("EOplus1" if x.lhs == t else "EOplus2", i, x)
                else:
                    continue
                if move not in seen:
                    seen.add(move)
                    yield move[0], [S(env[:i] + (x,) + env[i + 1:], f)], {"pos": i}
            if i + 1 < n and targets:
                a = targets[0]
                if isinstance(a, s.Seq) and a.lhs == t and a.rhs == env[i + 1]:
                    yield "EOtimes", [S(env[:i] + (a,) + env[i + 2:], f)], {"pos": i}
        # weakening strictly shrinks the environment
        if n >= 1 and s.is_program(env[0]):
            yield "Wp", [S(env[1:], f)], {}
        for i, t in enumerate(env):
            if s.is_formula(t):
                yield "Wf", [S(env[:i] + env[i + 1:], f)], {"pos": i}
        if grow:
            for b in self.tests:
                for i in range(n + 1):
                    if b in env[max(0, i - 1):i + 1]:
                        continue
                    yield "TC", [S(env[:i] + (b,) + env[i:], f),
                                 S(env[:i] + (s.neg(b),) + env[i:], f)], {"pos": i, "test": b}
            for g in self.cfg.lemmas:
                for k in range(n + 1):
                    yield "Cut", [S(env[:k], g), S(env[:k] + (g,) + env[k:], f)], {"formula": g}


def search_proof(seq, max_depth: int = 12, lemmas=()) -> ProofTree | None:
    """Iterative-deepening backward search; sound but incomplete.

    Depth counts rule applications along a branch. Cut is tried only with the
    given lemmas, TC only with tests occurring in the goal.
    """
    if isinstance(seq, str):
        seq = s.parse_sequent(seq)
    lemmas = tuple(s.parse_term(g) if isinstance(g, str) else g for g in lemmas)
    cfg = SearchConfig(max_depth, lemmas)
    searcher = _Searcher(seq, cfg)
    for d in range(1, max_depth + 1):
        found = searcher.prove(seq, d)
        if found is not None:
            return found
    return None


# derived rules

def star_intro(gamma, p, delta, f, unit_proof, plus_proof) -> ProofTree:
    """From G, 1, D |- f and G, p^+, D |- f conclude G, p^*, D |- f."""
    gamma, delta = tuple(gamma), tuple(delta)
    concl = s.Sequent(gamma + (s.star(p),) + delta, f)
    return ProofTree(concl, "IOplus", (unit_proof, plus_proof), {"pos": len(gamma)})


def star_unfold(gamma, p, delta, f, star_proof) -> ProofTree:
    """From G, p^*, D |- f conclude G, p, D |- f (EOplus2, then EPlus)."""
    gamma, delta = tuple(gamma), tuple(delta)
    k = len(gamma)
    mid = ProofTree(s.Sequent(gamma + (s.TransClos(p),) + delta, f), "EOplus2", (star_proof,), {"pos": k})
    return ProofTree(s.Sequent(gamma + (p,) + delta, f), "EPlus", (mid,), {"pos": k})


def star_unit(gamma, p, delta, f, star_proof) -> ProofTree:
    """From G, p^*, D |- f conclude G, 1, D |- f."""
    gamma, delta = tuple(gamma), tuple(delta)
    return ProofTree(s.Sequent(gamma + (s.ONE,) + delta, f), "EOplus1", (star_proof,), {"pos": len(gamma)})


def _weaken_programs(progs, pt: ProofTree) -> ProofTree:
    """Prefix the environment of ``pt`` with ``progs`` using Wp."""
    for p in reversed(tuple(progs)):
        c = pt.conclusion
        pt = ProofTree(s.Sequent((p,) + c.antecedent, c.succedent), "Wp", (pt,))
    return pt


def hoare_seq(b, p, c, q, d, first, second) -> ProofTree:
    """From b, p |- c and c, q |- d conclude b, p ; q |- d (cut on c)."""
    step = _weaken_programs((p,), second)  # p, c, q |- d
    step = ProofTree(s.Sequent((b,) + step.conclusion.antecedent, d), "Wf", (step,), {"pos": 0})
    cut = ProofTree(s.Sequent((b, p, q), d), "Cut", (first, step), {"formula": c})
    return ProofTree(s.Sequent((b, s.Seq(p, q)), d), "IOtimes", (cut,), {"pos": 1})


def hoare_if(b, c, p, q, d, then_proof, else_proof) -> ProofTree:
    """From b, c ; p |- d and b, !c ; q |- d conclude b, (c ; p) + (!c ; q) |- d."""
    prog = s.Plus(s.Seq(c, p), s.Seq(s.neg(c), q))
    return ProofTree(s.Sequent((b, prog), d), "IOplus", (then_proof, else_proof), {"pos": 1})


def identity_proof(g) -> ProofTree | None:
    """A proof of g |- g; immediate for tests, searched for other formulas."""
    if s.is_test(g):
        return ProofTree(s.Sequent((g,), g), "Id")
    return search_proof(s.Sequent((g,), g), max_depth=10)


def hoare_while(g, b, p, body_proof, identity=None) -> ProofTree:
    """Invariant rule: from g, b ; p |- g conclude g, (b ; p)^* ; !b |- g.

    The loop is the encoding of ``while b do p``. ``identity`` is a proof of
    g |- g, found automatically when omitted.
    """
    identity = identity or identity_proof(g)
    if identity is None:
        raise ValueError(f"no proof of {s.show(g)} |- {s.show(g)} found")
    body = s.Seq(b, p)
    loop = s.TransClos(body)
    unit = ProofTree(s.Sequent((g, s.ONE), g), "Wf", (identity,), {"pos": 1})
    plus = ProofTree(s.Sequent((g, loop), g), "IPlus", (body_proof, body_proof))
    starred = star_intro((g,), body, (), g, unit, plus)
    dropped = ProofTree(s.Sequent((g, s.star(body), s.neg(b)), g), "Wf", (starred,), {"pos": 2})
    return ProofTree(s.Sequent((g, s.Seq(s.star(body), s.neg(b))), g), "IOtimes", (dropped,), {"pos": 1})


TEMPLATES = {
    "star_intro": star_intro,
    "star_unfold": star_unfold,
    "star_unit": star_unit,
    "hoare_seq": hoare_seq,
    "hoare_if": hoare_if,
    "hoare_while": hoare_while,
}


def derived_rules(names=None) -> dict:
    """Proof-tree constructors for derived rules; ``names`` selects a subset."""
    if names is None:
        return dict(TEMPLATES)
    return {k: TEMPLATES[k] for k in names}
