from ._lex import ParseError, SortError
from .slang import (
    ONE, ZERO, Imp, Plus, ProgVar, Seq, Sequent, Sort, TestVar, TransClos, Zero,
    is_formula, is_program, is_test, neg, parse_s, parse_sequent, parse_term, sort_of, star,
)
from .terms import Equation, Leq, QuasiEquation, parse_equation, parse_quasi, parse_skat
from .programs import (
    Action, If, Skip, Then, While, encode_while, hoare_as_formula, hoare_as_kat_equation,
)
from . import slang, terms


def to_text(x) -> str:
    """Concrete syntax for any S or term-language object."""
    if isinstance(x, (terms.Equation, terms.QuasiEquation)):
        return str(x)
    if isinstance(x, (slang.Sequent, tuple)) or type(x) in (TestVar, ProgVar, Zero, Imp, Plus, Seq, TransClos):
        return slang.show(x)
    return terms.show(x)
