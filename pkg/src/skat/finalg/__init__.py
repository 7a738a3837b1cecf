from .algebra import (
    FiniteAlgebra, MissingTable, UnassignedVariable, Witness, check_equation, check_quasi,
    compile_term, eval_term,
)
from .axioms import (
    CLOSURE_EQUATION, AxiomReport, AxiomResult, TheoryLevel, axioms_for, check_axioms,
    check_star_continuity, derived_property_suite,
)
from .builtins import BUILTINS, builtin_fig2, builtin_fig3
from .mine import canonical, canonical_key, enumerate_algebras, is_isomorphic, mined, mined_up_to
from .relational import full_relational_algebra
