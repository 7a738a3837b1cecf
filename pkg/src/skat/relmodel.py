"""Binary relations on a finite set, relational models of S, and countermodel search.

A relation on ``W = {0..n-1}`` is stored as a tuple of ``n`` row bitmasks:
bit ``t`` of row ``s`` is set iff ``(s, t)`` is in the relation. Enumeration
of relations uses the row-major integer code (pair ``(s, t)`` is bit
``s*n + t``) so the search order is deterministic.
"""
from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .syntax import slang as s
from .syntax import terms as tm


class CarrierMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    n: int
    rows: tuple

    # constructors

    @classmethod
    def empty(cls, n):
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def full(cls, n):
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_pairs(cls, n, pairs):
        rows = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair {(a, b)} outside carrier of size {n}")
            rows[a] |= 1 << b
        return cls(n, tuple(rows))

    @classmethod
    def from_code(cls, n, code):
        mask = (1 << n) - 1
        return cls(n, tuple((code >> (i * n)) & mask for i in range(n)))

    @classmethod
    def subidentity(cls, n, subset_code):
        return cls(n, tuple((1 << i) if subset_code >> i & 1 else 0 for i in range(n)))

    # views

    @property
    def code(self) -> int:
        return sum(r << (i * self.n) for i, r in enumerate(self.rows))

    def pairs(self) -> list:
        return [(a, b) for a in range(self.n) for b in range(self.n) if self.rows[a] >> b & 1]

    def __contains__(self, pair):
        a, b = pair
        return bool(self.rows[a] >> b & 1)

    def __len__(self):
        return sum(bin(r).count("1") for r in self.rows)

    def __repr__(self):
        return f"Relation({self.n}, {self.pairs()})"

    def _same(self, other):
        if self.n != other.n:
            raise CarrierMismatch(f"carriers of size {self.n} and {other.n}")

    def __le__(self, other):
        self._same(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __or__(self, other):
        self._same(other)
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other):
        self._same(other)
        return Relation(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __matmul__(self, other):
        self._same(other)
        rows = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc |= other.rows[j]
                r >>= 1
                j += 1
            rows.append(acc)
        return Relation(self.n, tuple(rows))

    def is_subidentity(self):
        return all(r & ~(1 << i) == 0 for i, r in enumerate(self.rows))

    def transpose(self):
        return Relation.from_pairs(self.n, [(b, a) for a, b in self.pairs()])

    def range_mask(self) -> int:
        acc = 0
        for r in self.rows:
            acc |= r
        return acc


def rel_compose(r: Relation, q: Relation) -> Relation:
    return r @ q


def rel_union(r: Relation, q: Relation) -> Relation:
    return r | q


def rel_star(r: Relation) -> Relation:
    """Reflexive transitive closure (Warshall)."""
    rows = list(r.rows)
    for k in range(r.n):
        bit = 1 << k
        for i in range(r.n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return Relation(r.n, tuple(row | (1 << i) for i, row in enumerate(rows)))


def rel_plus(r: Relation) -> Relation:
    return r @ rel_star(r)


def rel_rres(r: Relation, q: Relation) -> Relation:
    """``r -> q = {(s,u) | for all v, (u,v) in r implies (s,v) in q}``."""
    r._same(q)
    rows = []
    for qs in q.rows:
        row = 0
        for u, ru in enumerate(r.rows):
            if ru & ~qs == 0:
                row |= 1 << u
        rows.append(row)
    return Relation(r.n, tuple(rows))


def rel_lres(r: Relation, q: Relation) -> Relation:
    """``r ~> q = {(s,u) | for all v, (v,s) in r implies (v,u) in q}``."""
    r._same(q)
    n = r.n
    full = (1 << n) - 1
    rows = []
    for s_ in range(n):
        row = full
        for v in range(n):
            if r.rows[v] >> s_ & 1:
                row &= q.rows[v]
        rows.append(row)
    return Relation(n, tuple(rows))


def rel_anti(r: Relation) -> Relation:
    """``{(u,u) | no s with (s,u) in r}``."""
    hit = r.range_mask()
    return Relation(r.n, tuple(0 if hit >> u & 1 else 1 << u for u in range(r.n)))


def rel_cod(r: Relation) -> Relation:
    hit = r.range_mask()
    return Relation(r.n, tuple((1 << u) & hit for u in range(r.n)))


def rel_ext(r: Relation) -> Relation:
    """``{(s,u) | (u,u) in r}``."""
    diag = 0
    for u, row in enumerate(r.rows):
        if row >> u & 1:
            diag |= 1 << u
    return Relation(r.n, (diag,) * r.n)


def rel_top(n) -> Relation:
    return Relation.full(n)


def all_relations(n):
    for code in range(1 << (n * n)):
        yield Relation.from_code(n, code)


def all_subidentities(n):
    for code in range(1 << n):
        yield Relation.subidentity(n, code)


def random_relation(rng: random.Random, n: int, density: float | None = None) -> Relation:
    if density is None:
        density = rng.choice((0.0, 0.2, 0.35, 0.5, 0.7, 1.0))
    return Relation.from_pairs(n, [(a, b) for a in range(n) for b in range(n) if rng.random() < density])


def random_subidentity(rng: random.Random, n: int) -> Relation:
    return Relation.subidentity(n, rng.randrange(1 << n))


# the full relational algebra

class UnassignedVariable(KeyError):
    pass


def eval_skat(t: tm.Term, n: int, asg: dict) -> Relation:
    """Value of a term in the full relational algebra on ``{0..n-1}``."""
    if isinstance(t, tm.Var):
        try:
            return asg[t.name]
        except KeyError:
            raise UnassignedVariable(t.name) from None
    if isinstance(t, tm.One):
        return Relation.identity(n)
    if isinstance(t, tm.Zero):
        return Relation.empty(n)
    if isinstance(t, tm.Mul):
        return eval_skat(t.lhs, n, asg) @ eval_skat(t.rhs, n, asg)
    if isinstance(t, tm.Add):
        return eval_skat(t.lhs, n, asg) | eval_skat(t.rhs, n, asg)
    if isinstance(t, tm.RRes):
        return rel_rres(eval_skat(t.lhs, n, asg), eval_skat(t.rhs, n, asg))
    if isinstance(t, tm.LRes):
        return rel_lres(eval_skat(t.lhs, n, asg), eval_skat(t.rhs, n, asg))
    if isinstance(t, tm.Star):
        return rel_star(eval_skat(t.arg, n, asg))
    if isinstance(t, tm.Cod):
        return rel_cod(eval_skat(t.arg, n, asg))
    if isinstance(t, tm.Anti):
        return rel_anti(eval_skat(t.arg, n, asg))
    if isinstance(t, tm.Ext):
        return rel_ext(eval_skat(t.arg, n, asg))
    if isinstance(t, tm.Bar):
        raise ValueError("bar is not an operation of the relational algebra")
    raise TypeError(f"not a term: {t!r}")


@dataclass(frozen=True)
class RelationalAlgebra:
    """Full relational algebra on ``{0..n-1}`` behind the generic evaluation API."""

    n: int

    def evaluate(self, t, asg):
        return eval_skat(t, self.n, asg)

    def holds(self, eq: tm.Equation, asg) -> bool:
        lhs, rhs = self.evaluate(eq.lhs, asg), self.evaluate(eq.rhs, asg)
        return lhs <= rhs if eq.leq else lhs == rhs


# relational models of S

@dataclass(frozen=True)
class RelModel:
    W: int
    valuation: dict = field(default_factory=dict)  # S variable -> Relation

    def __post_init__(self):
        if self.W < 1:
            raise ValueError("W must be non-empty")
        for v, r in self.valuation.items():
            if r.n != self.W:
                raise CarrierMismatch(f"{s.var_name(v)} is a relation on {r.n} points, W = {self.W}")
            if isinstance(v, s.TestVar) and not r.is_subidentity():
                raise ValueError(f"test variable {s.var_name(v)} must denote a subset of the identity")

    def __hash__(self):
        return hash((self.W, tuple(sorted((s.var_name(v), r.rows) for v, r in self.valuation.items()))))

    def to_json(self) -> dict:
        val = {s.var_name(v): [list(p) for p in r.pairs()]
               for v, r in sorted(self.valuation.items(), key=lambda kv: s.var_name(kv[0]))}
        return {"W": self.W, "valuation": val}

    @classmethod
    def from_json(cls, data) -> "RelModel":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["W"])
        val = {s.var_from_name(k): Relation.from_pairs(n, [tuple(p) for p in ps])
               for k, ps in data.get("valuation", {}).items()}
        return cls(n, val)

    def skat_assignment(self) -> dict:
        """Valuation of the translated variables: x_{2n} = p_n, x_{2n+1} = b_n."""
        out = {}
        for v, r in self.valuation.items():
            idx = 2 * v.n + (1 if isinstance(v, s.TestVar) else 0)
            out[f"x{idx}"] = r
        return out


class MissingVariable(KeyError):
    pass


def interpret_s(alpha, M: RelModel) -> Relation:
    """The M-interpretation of an S term or environment (tuple)."""
    n = M.W
    if isinstance(alpha, tuple):
        out = Relation.identity(n)
        for item in alpha:
            out = out @ interpret_s(item, M)
        return out
    if isinstance(alpha, (s.TestVar, s.ProgVar)):
        try:
            return M.valuation[alpha]
        except KeyError:
            raise MissingVariable(s.var_name(alpha)) from None
    if isinstance(alpha, s.Zero):
        return Relation.empty(n)
    if isinstance(alpha, s.Plus):
        return interpret_s(alpha.lhs, M) | interpret_s(alpha.rhs, M)
    if isinstance(alpha, s.Seq):
        return interpret_s(alpha.lhs, M) @ interpret_s(alpha.rhs, M)
    if isinstance(alpha, s.TransClos):
        return rel_plus(interpret_s(alpha.arg, M))
    if isinstance(alpha, s.Imp):
        # covers both b => c and p => f: for tests the lhs is a subidentity
        p = interpret_s(alpha.lhs, M)
        f = interpret_s(alpha.rhs, M)
        good = sum(1 << t for t in range(n) if f.rows[t] >> t & 1)
        return Relation(n, tuple((1 << u) if p.rows[u] & ~good == 0 else 0 for u in range(n)))
    raise TypeError(f"not an S expression: {alpha!r}")


def sequent_valid(seq: s.Sequent, M: RelModel) -> bool:
    env = interpret_s(seq.antecedent, M)
    f = interpret_s(seq.succedent, M)
    good = sum(1 << t for t in range(M.W) if f.rows[t] >> t & 1)
    return env.range_mask() & ~good == 0


# countermodel search

EXHAUSTIVE_LIMIT = 1 << 12  # valuations per carrier size; 3 program variables at W = 2
DEFAULT_BUDGET = 100_000


@dataclass
class CountermodelConfig:
    max_w: int = 3
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    jobs: int = 1


def _choices(v, n) -> int:
    return (1 << n) if isinstance(v, s.TestVar) else (1 << (n * n))


def _relation(v, n, code) -> Relation:
    return Relation.subidentity(n, code) if isinstance(v, s.TestVar) else Relation.from_code(n, code)


def _ordered_vars(seq):
    return sorted(s.variables(seq), key=lambda v: (s.var_name(v)[0], v.n))


def _space(vs, n) -> int:
    total = 1
    for v in vs:
        total *= _choices(v, n)
    return total


def _scan(seq, vs, n, first_codes):
    """Exhaustive scan with the first variable restricted to ``first_codes``."""
    rest = [range(_choices(v, n)) for v in vs[1:]]
    for head in first_codes:
        for tail in itertools.product(*rest):
            codes = (head,) + tail if vs else ()
            M = RelModel(n, {v: _relation(v, n, c) for v, c in zip(vs, codes)})
            if not sequent_valid(seq, M):
                return M
        if not vs:
            break
    return None


def _scan_chunk(args):
    text, n, first_codes = args
    seq = s.parse_sequent(text)
    return _scan(seq, _ordered_vars(seq), n, first_codes)


def find_countermodel(seq: s.Sequent, max_w: int = 3, budget: int = DEFAULT_BUDGET,
                      seed: int = 0, jobs: int = 1) -> RelModel | None:
    """Smallest-carrier countermodel, or None if none is found within the budget.

    A carrier size is scanned exhaustively, in lexicographic valuation order,
    when its valuation space has at most ``EXHAUSTIVE_LIMIT`` points; larger
    spaces get seeded random sampling sharing ``budget`` evenly.
    """
    if isinstance(seq, str):
        seq = s.parse_sequent(seq)
    if max_w < 1:
        raise ValueError("max_w must be at least 1")
    vs = _ordered_vars(seq)
    big = [n for n in range(1, max_w + 1) if _space(vs, n) > EXHAUSTIVE_LIMIT]
    per_size = budget // len(big) if big else 0
    rng = random.Random(seed)
    for n in range(1, max_w + 1):
        if n not in big:
            firsts = range(_choices(vs[0], n)) if vs else range(1)
            if jobs > 1 and vs:
                chunks = _split(list(firsts), jobs)
                with ProcessPoolExecutor(jobs) as ex:
                    found = list(ex.map(_scan_chunk, [(s.show(seq), n, c) for c in chunks]))
                # chunks are in order, so the first hit is the lexicographically least
                hit = next((m for m in found if m is not None), None)
            else:
                hit = _scan(seq, vs, n, firsts)
            if hit is not None:
                return hit
            continue
        for _ in range(per_size):
            M = RelModel(n, {v: (random_subidentity(rng, n) if isinstance(v, s.TestVar)
                                 else random_relation(rng, n)) for v in vs})
            if not sequent_valid(seq, M):
                return M
    return None


def _split(xs, k):
    size = -(-len(xs) // k)
    return [xs[i:i + size] for i in range(0, len(xs), size)]


def random_model(rng: random.Random, n: int, vs) -> RelModel:
    return RelModel(n, {v: (random_subidentity(rng, n) if isinstance(v, s.TestVar)
                            else random_relation(rng, n)) for v in vs})


@lru_cache(maxsize=None)
def relations_table(n: int) -> tuple:
    return tuple(all_relations(n))
