"""Small-model miner.

Only ``add``, ``mul``, ``anti`` and the test structure are enumerated. Star,
residuals and ``e`` are adjoints or least fixpoints, hence unique when they
exist; they are computed as finite joins and then validated, and a candidate
whose adjoint does not exist is dropped.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from .algebra import TABLES, FiniteAlgebra
from .axioms import TheoryLevel, check_axioms

MAX_SIZE = 4


# tables

def _partial_orders(elems):
    """All partial orders on ``elems`` as sets of strict pairs (a, b) meaning a < b."""
    pairs = list(itertools.combinations(elems, 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        lt = set()
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                lt.add((a, b))
            elif c == 2:
                lt.add((b, a))
        if all((a, d) in lt for (a, b) in lt for (c, d) in lt if b == c):
            yield lt


def semilattices(n):
    """Join tables on ``{0..n-1}`` with bottom 0, one per labelled order."""
    if n == 1:
        yield ((0,),)
        return
    for lt in _partial_orders(range(1, n)):
        lt = lt | {(0, x) for x in range(1, n)}

        def le(a, b):
            return a == b or (a, b) in lt
        table = []
        for x in range(n):
            row = []
            for y in range(n):
                ubs = [u for u in range(n) if le(x, u) and le(y, u)]
                least = [u for u in ubs if all(le(u, v) for v in ubs)]
                if len(least) != 1:
                    break
                row.append(least[0])
            else:
                table.append(tuple(row))
                continue
            break
        else:
            yield tuple(table)


def _is_semiring(add, mul, n):
    r = range(n)
    for x in r:
        for y in r:
            for z in r:
                if mul[x][mul[y][z]] != mul[mul[x][y]][z]:
                    return False
                if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
                    return False
                if mul[add[x][y]][z] != add[mul[x][z]][mul[y][z]]:
                    return False
    return True


def semirings(n):
    """Idempotent semirings with zero 0 and one 1 (0 = 1 when n = 1)."""
    one = 0 if n == 1 else 1
    free = [(i, j) for i in range(2, n) for j in range(2, n)]
    for add in semilattices(n):
        for vals in itertools.product(range(n), repeat=len(free)):
            mul = [[0] * n for _ in range(n)]
            for x in range(n):
                mul[one][x] = x
                mul[x][one] = x
                mul[0][x] = 0
                mul[x][0] = 0
            for (i, j), v in zip(free, vals):
                mul[i][j] = v
            mul = tuple(map(tuple, mul))
            if _is_semiring(add, mul, n):
                yield FiniteAlgebra(n, 0, one, add, mul)


# derived tables

def derive_star(A):
    out = []
    for x in A.elements:
        seen, p = [], A.one
        while p not in seen:
            seen.append(p)
            p = A.mul[p][x]
        out.append(A.join(seen))
    return tuple(out)


def derive_rres(A):
    """``y -> z`` as the join of all x with x ; y <= z, or None if that is no residual."""
    table = []
    for y in A.elements:
        row = []
        for z in A.elements:
            cand = A.join(x for x in A.elements if A.leq(A.mul[x][y], z))
            if any(A.leq(A.mul[x][y], z) != A.leq(x, cand) for x in A.elements):
                return None
            row.append(cand)
        table.append(tuple(row))
    return tuple(table)


def derive_lres(A):
    table = []
    for x in A.elements:
        row = []
        for z in A.elements:
            cand = A.join(y for y in A.elements if A.leq(A.mul[x][y], z))
            if any(A.leq(A.mul[x][y], z) != A.leq(y, cand) for y in A.elements):
                return None
            row.append(cand)
        table.append(tuple(row))
    return tuple(table)


def derive_ext(A):
    """Upper adjoint of c, or None if c has none."""
    out = []
    for y in A.elements:
        cand = A.join(x for x in A.elements if A.leq(A.cod(x), y))
        if any(A.leq(A.cod(x), y) != A.leq(x, cand) for x in A.elements):
            return None
        out.append(cand)
    return tuple(out)


def _anti_ok(A, anti):
    # cheap prefilter on the two equational anti axioms
    mul, add = A.mul, A.add
    for x in A.elements:
        if mul[x][anti[x]] != A.zero or add[anti[x]][anti[anti[x]]] != A.one:
            return False
    return True


def _test_structures(A):
    """(B, bar) pairs: B a Boolean subalgebra containing 0 and 1, bar free off B."""
    n = A.size
    others = [x for x in A.elements if x not in (A.zero, A.one)]
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            B = sorted({A.zero, A.one, *extra})
            if any(A.mul[x][y] not in B or A.add[x][y] not in B for x in B for y in B):
                continue
            comp = {}
            for b in B:
                cs = [c for c in B if A.add[b][c] == A.one and A.mul[b][c] == A.zero]
                if len(cs) != 1:
                    break
                comp[b] = cs[0]
            else:
                rest = [x for x in A.elements if x not in B]
                for vals in itertools.product(range(n), repeat=len(rest)):
                    bar = [0] * n
                    for b in B:
                        bar[b] = comp[b]
                    for x, v in zip(rest, vals):
                        bar[x] = v
                    yield tuple(B), tuple(bar)


def _candidates(A, level):
    L = TheoryLevel
    if level is L.IdemSemiring:
        yield A
        return
    A = A.with_tables(star=derive_star(A))
    if level in (L.KleeneAlgebra, L.StarContinuous):
        yield A
        return
    if level in (L.KAT, L.RKAT):
        if level is L.RKAT:
            rres = derive_rres(A)
            if rres is None:
                return
            A = A.with_tables(rres=rres)
        for B, bar in _test_structures(A):
            yield A.with_tables(B=B, bar=bar)
        return
    if level in (L.SKAT, L.SKATStar):
        rres, lres = derive_rres(A), derive_lres(A)
        if rres is None or lres is None:
            return
        A = A.with_tables(rres=rres, lres=lres)
    for anti in itertools.product(A.elements, repeat=A.size):
        if not _anti_ok(A, anti):
            continue
        C = A.with_tables(anti=anti)
        if level is L.KAC:
            yield C
            continue
        ext = derive_ext(C)
        if ext is not None:
            yield C.with_tables(ext=ext)


def _expand(args):
    A, level = args
    return [C for C in _candidates(A, level) if check_axioms(C, level).ok]


# isomorphism

def permuted(A: FiniteAlgebra, perm) -> FiniteAlgebra:
    """Image of A under the carrier bijection ``x -> perm[x]``."""
    inv = [0] * A.size
    for x, y in enumerate(perm):
        inv[y] = x
    kw = {}
    for name in TABLES:
        t = getattr(A, name)
        if t is None:
            continue
        if isinstance(t[0], tuple):
            kw[name] = tuple(tuple(perm[t[inv[i]][inv[j]]] for j in A.elements) for i in A.elements)
        else:
            kw[name] = tuple(perm[t[inv[i]]] for i in A.elements)
    if A.B is not None:
        kw["B"] = tuple(sorted(perm[b] for b in A.B))
    return FiniteAlgebra(A.size, perm[A.zero], perm[A.one], names=None, **{
        k: kw.get(k) for k in TABLES + ("B",)})


def _perms_fixing(A):
    fixed = {A.zero, A.one}
    movable = [x for x in A.elements if x not in fixed]
    for img in itertools.permutations(movable):
        perm = list(A.elements)
        for x, y in zip(movable, img):
            perm[x] = y
        yield perm


def canonical_key(A: FiniteAlgebra) -> tuple:
    """Least table tuple over all relabellings fixing 0 and 1."""
    return min(permuted(A, p).table_key() for p in _perms_fixing(A))


def canonical(A: FiniteAlgebra) -> FiniteAlgebra:
    return min((permuted(A, p) for p in _perms_fixing(A)), key=lambda B: B.table_key())


def present_tables(A):
    return tuple(name for name in TABLES + ("B",) if getattr(A, name) is not None)


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    if A.size != B.size or present_tables(A) != present_tables(B):
        return False
    if A.zero != B.zero or A.one != B.one:
        # relabel B so its constants sit where A's do
        perm = [0] * B.size
        perm[B.zero], perm[B.one] = A.zero, A.one
        src = [x for x in B.elements if x not in (B.zero, B.one)]
        dst = [x for x in A.elements if x not in (A.zero, A.one)]
        for x, y in zip(src, dst):
            perm[x] = y
        B = permuted(B, perm)
    return canonical_key(A) == canonical_key(B)


# enumeration

def enumerate_algebras(size: int, level, jobs: int = 1):
    """All algebras of the given size at ``level``, one per isomorphism class.

    Output is sorted by canonical table tuple. Size 1 is the degenerate
    algebra with 0 = 1; check ``.degenerate`` to exclude it.
    """
    if not 1 <= size <= MAX_SIZE:
        raise ValueError(f"size must be between 1 and {MAX_SIZE}")
    level = TheoryLevel.parse(level)
    work = [(A, level) for A in semirings(size)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            batches = list(ex.map(_expand, work))
    else:
        batches = [_expand(w) for w in work]
    seen = {}
    for batch in batches:
        for C in batch:
            key = canonical_key(C)
            if key not in seen:
                seen[key] = canonical(C)
    for key in sorted(seen):
        yield seen[key]


@lru_cache(maxsize=None)
def mined(size: int, level) -> tuple:
    return tuple(enumerate_algebras(size, level))


def mined_up_to(max_size: int, level) -> list:
    out = []
    for n in range(1, max_size + 1):
        out.extend(mined(n, TheoryLevel.parse(level)))
    return out
