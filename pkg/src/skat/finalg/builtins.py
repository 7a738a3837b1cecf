"""The two three-element counterexample algebras, elements coded 0, 1, T -> 0, 1, 2."""
from __future__ import annotations

from .algebra import FiniteAlgebra

NAMES = ("0", "1", "T")

# chain 0 < 1 < T
_ADD = ((0, 1, 2), (1, 1, 2), (2, 2, 2))
_MUL = ((0, 0, 0), (0, 1, 2), (0, 2, 2))
_STAR = (1, 1, 2)
# row = left operand of ->
_RRES = ((2, 2, 2), (0, 1, 2), (0, 0, 2))


def builtin_fig2() -> FiniteAlgebra:
    """Residuated KAT with B = {0, 1} where x -> 0 is not the test complement."""
    return FiniteAlgebra(
        size=3, zero=0, one=1, add=_ADD, mul=_MUL, star=_STAR, rres=_RRES,
        B=(0, 1), bar=(1, 0, 2), names=NAMES,
    )


def builtin_fig3() -> FiniteAlgebra:
    """SKAT algebra in which the tests are not closed under ->."""
    return FiniteAlgebra(
        size=3, zero=0, one=1, add=_ADD, mul=_MUL, star=_STAR, rres=_RRES, lres=_RRES,
        anti=(1, 0, 0), ext=(0, 2, 2), names=NAMES,
    )


BUILTINS = {"fig2": builtin_fig2, "fig3": builtin_fig3}
