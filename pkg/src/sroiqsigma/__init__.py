"""SROIQ concepts with explicit add/delete substitutions.

The package provides the concept syntax and its finite-model semantics, the
substitution-eliminating translation system with its termination measures,
role-box regularity and simple-role analysis, and a sound bounded
satisfiability search, all behind one CLI (``sroiqsigma``).
"""

__version__ = "0.1.0"

from .parser import load_signature, parse_concept, parse_signature
from .rewrite import MeasurePair, RewriteStep, measure_m, measure_mp, normalize, rewrite_step
from .rbox import check_regular, check_simple_assertions, find_regular_order, simple_roles
from .search import SatQuery, SatResult, check_model, sat_bounded
from .semantics import (
    Interpretation,
    apply_subst,
    eval_concept,
    eval_role,
    eval_role_word,
    load_interpretation,
    rbox_satisfied,
)
from .syntax import (
    And,
    AtLeast,
    BOT,
    Bot,
    Concept,
    ConceptAdd,
    ConceptDel,
    EPSILON,
    Epsilon,
    Exists,
    Forall,
    LessThan,
    Name,
    Nominal,
    Not,
    Or,
    RBox,
    Role,
    RoleAdd,
    RoleAssertion,
    RoleAxiom,
    RoleDel,
    SelfLoop,
    Signature,
    Subst,
    Substitution,
    TOP,
    UNIVERSAL,
    canonical_nominal,
    contains_subst,
    print_concept,
    well_formed,
)

__all__ = [name for name in dir() if not name.startswith("_")]
