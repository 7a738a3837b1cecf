"""Full relational algebras on tiny carriers as explicit operation tables."""
from __future__ import annotations

from functools import lru_cache

from .. import relmodel as rm
from .algebra import FiniteAlgebra


@lru_cache(maxsize=None)
def full_relational_algebra(n: int) -> FiniteAlgebra:
    """Every relation on ``{0..n-1}`` is an element, numbered by its row-major code.

    Practical for ``n <= 2`` only (16 elements); n = 3 already has 512.
    """
    rels = rm.relations_table(n)
    add = tuple(tuple((r | q).code for q in rels) for r in rels)
    mul = tuple(tuple((r @ q).code for q in rels) for r in rels)
    rres = tuple(tuple(rm.rel_rres(y, z).code for z in rels) for y in rels)
    lres = tuple(tuple(rm.rel_lres(x, z).code for z in rels) for x in rels)
    return FiniteAlgebra(
        size=len(rels), zero=rm.Relation.empty(n).code, one=rm.Relation.identity(n).code,
        add=add, mul=mul,
        star=tuple(rm.rel_star(r).code for r in rels),
        rres=rres, lres=lres,
        anti=tuple(rm.rel_anti(r).code for r in rels),
        ext=tuple(rm.rel_ext(r).code for r in rels),
    )
