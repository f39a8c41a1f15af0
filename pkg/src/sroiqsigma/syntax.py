"""Abstract syntax: roles, concepts, substitutions, signatures and role boxes.

All terms are immutable frozen dataclasses, so structural equality and
hashing are free and every value can be shared between threads. The concrete
text grammar lives in :mod:`sroiqsigma.parser`; this module owns the canonical
printer (the inverse of the parser on well-formed terms).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import SignatureError

UNIVERSAL_NAME = "U"

#: Words with a fixed meaning in the concept grammar; not usable as names.
RESERVED_WORDS = frozenset({"bot", "top", "exists", "forall", "self", "eps", UNIVERSAL_NAME})

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def canonical_nominal(individual: str) -> str:
    """Name of the nominal pinned to an individual; its valuation must equal
    the individual's."""
    return f"o_{individual}"


# ---------------------------------------------------------------------------
# Roles


@dataclass(frozen=True)
class Role:
    """A role name, its inverse, or the universal role (name ``U``)."""

    name: str
    inverse: bool = False

    def __post_init__(self):
        if self.name == UNIVERSAL_NAME and self.inverse:
            raise ValueError("the universal role has no inverse")

    @property
    def is_universal(self) -> bool:
        return self.name == UNIVERSAL_NAME

    def inverted(self) -> "Role":
        if self.is_universal:
            raise ValueError("the universal role has no inverse")
        return Role(self.name, not self.inverse)

    def __str__(self) -> str:
        return self.name + ("-" if self.inverse else "")


UNIVERSAL = Role(UNIVERSAL_NAME)


# ---------------------------------------------------------------------------
# Substitutions


class Substitution:
    """Base class; one of Epsilon, ConceptAdd/Del, RoleAdd/Del."""

    __slots__ = ()


@dataclass(frozen=True)
class Epsilon(Substitution):
    def __str__(self) -> str:
        return "eps"


EPSILON = Epsilon()


@dataclass(frozen=True)
class ConceptAdd(Substitution):
    concept: str
    individual: str

    def __str__(self) -> str:
        return f"{self.concept} := {self.concept} + {self.individual}"


@dataclass(frozen=True)
class ConceptDel(Substitution):
    concept: str
    individual: str

    def __str__(self) -> str:
        return f"{self.concept} := {self.concept} - {self.individual}"


@dataclass(frozen=True)
class RoleAdd(Substitution):
    role: str
    source: str
    target: str

    def __str__(self) -> str:
        return f"{self.role} := {self.role} + ({self.source}, {self.target})"


@dataclass(frozen=True)
class RoleDel(Substitution):
    role: str
    source: str
    target: str

    def __str__(self) -> str:
        return f"{self.role} := {self.role} - ({self.source}, {self.target})"


# ---------------------------------------------------------------------------
# Concepts


class Concept:
    """Base class for concept terms."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_concept(self)


@dataclass(frozen=True)
class Bot(Concept):
    pass


BOT = Bot()


@dataclass(frozen=True)
class Name(Concept):
    name: str


@dataclass(frozen=True)
class Nominal(Concept):
    name: str


@dataclass(frozen=True)
class Not(Concept):
    body: Concept


#: Surface token ``top`` desugars to the negated empty concept.
TOP = Not(BOT)


@dataclass(frozen=True)
class And(Concept):
    left: Concept
    right: Concept


@dataclass(frozen=True)
class Or(Concept):
    left: Concept
    right: Concept


@dataclass(frozen=True)
class AtLeast(Concept):
    bound: int
    role: Role
    body: Concept

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("counting bound must be a natural number")


@dataclass(frozen=True)
class LessThan(Concept):
    bound: int
    role: Role
    body: Concept

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("counting bound must be a natural number")


@dataclass(frozen=True)
class Exists(Concept):
    role: Role
    body: Concept


@dataclass(frozen=True)
class Forall(Concept):
    role: Role
    body: Concept


@dataclass(frozen=True)
class SelfLoop(Concept):
    role: Role

    def __post_init__(self):
        if self.role.is_universal:
            raise ValueError("local reflexivity over the universal role is not supported")


@dataclass(frozen=True)
class Subst(Concept):
    body: Concept
    sub: Substitution


def implies(antecedent: Concept, consequent: Concept) -> Or:
    """Material implication, eagerly expanded: the AST has no arrow node."""
    return Or(Not(antecedent), consequent)


# ---------------------------------------------------------------------------
# Generic traversal


def concept_children(c: Concept) -> tuple[Concept, ...]:
    """Direct concept subterms, in left-to-right order."""
    if isinstance(c, Not):
        return (c.body,)
    if isinstance(c, (And, Or)):
        return (c.left, c.right)
    if isinstance(c, (AtLeast, LessThan, Exists, Forall, Subst)):
        return (c.body,)
    return ()


def replace_child(c: Concept, index: int, new: Concept) -> Concept:
    if isinstance(c, Not):
        return Not(new)
    if isinstance(c, And):
        return And(new, c.right) if index == 0 else And(c.left, new)
    if isinstance(c, Or):
        return Or(new, c.right) if index == 0 else Or(c.left, new)
    if isinstance(c, AtLeast):
        return AtLeast(c.bound, c.role, new)
    if isinstance(c, LessThan):
        return LessThan(c.bound, c.role, new)
    if isinstance(c, Exists):
        return Exists(c.role, new)
    if isinstance(c, Forall):
        return Forall(c.role, new)
    if isinstance(c, Subst):
        return Subst(new, c.sub)
    raise ValueError(f"{type(c).__name__} has no children")


def subterm_at(c: Concept, path: tuple[int, ...]) -> Concept:
    for index in path:
        c = concept_children(c)[index]
    return c


def replace_at(c: Concept, path: tuple[int, ...], new: Concept) -> Concept:
    """Replace the subterm at ``path``; shares all untouched structure."""
    if not path:
        return new
    child = concept_children(c)[path[0]]
    return replace_child(c, path[0], replace_at(child, path[1:], new))


def iter_subterms(c: Concept) -> Iterator[Concept]:
    """Pre-order traversal of all subterms, the term itself included."""
    stack = [c]
    while stack:
        t = stack.pop()
        yield t
        stack.extend(reversed(concept_children(t)))


def contains_subst(c: Concept) -> bool:
    return any(isinstance(t, Subst) for t in iter_subterms(c))


def concept_size(c: Concept) -> int:
    return sum(1 for _ in iter_subterms(c))


@dataclass(frozen=True)
class NamesUsed:
    concepts: frozenset[str]
    nominals: frozenset[str]
    roles: frozenset[str]
    individuals: frozenset[str]


def names_used(c: Concept) -> NamesUsed:
    """All names occurring in a concept, substitutions included."""
    concepts: set[str] = set()
    nominals: set[str] = set()
    roles: set[str] = set()
    individuals: set[str] = set()
    for t in iter_subterms(c):
        if isinstance(t, Name):
            concepts.add(t.name)
        elif isinstance(t, Nominal):
            nominals.add(t.name)
        elif isinstance(t, (AtLeast, LessThan, Exists, Forall, SelfLoop)):
            if not t.role.is_universal:
                roles.add(t.role.name)
        elif isinstance(t, Subst):
            s = t.sub
            if isinstance(s, (ConceptAdd, ConceptDel)):
                concepts.add(s.concept)
                individuals.add(s.individual)
            elif isinstance(s, (RoleAdd, RoleDel)):
                roles.add(s.role)
                individuals.add(s.source)
                individuals.add(s.target)
    return NamesUsed(
        frozenset(concepts), frozenset(nominals), frozenset(roles), frozenset(individuals)
    )


# ---------------------------------------------------------------------------
# Signature


@dataclass(frozen=True)
class Signature:
    """Name declarations. ``role_names`` always contains the universal role,
    and every individual ``i`` owns the canonical nominal ``o_i``."""

    concept_names: frozenset[str]
    nominal_names: frozenset[str]
    role_names: frozenset[str]
    individual_names: frozenset[str]

    @staticmethod
    def make(
        concepts=(),
        nominals=(),
        roles=(),
        individuals=(),
    ) -> "Signature":
        concepts = frozenset(concepts)
        nominals = frozenset(nominals)
        roles = frozenset(roles) | {UNIVERSAL_NAME}
        individuals = frozenset(individuals)
        for category, names in (
            ("concept", concepts),
            ("nominal", nominals),
            ("role", roles - {UNIVERSAL_NAME}),
            ("individual", individuals),
        ):
            for n in sorted(names):
                if not _NAME_RE.match(n):
                    raise SignatureError(f"invalid {category} name: {n!r}")
                if n in RESERVED_WORDS:
                    raise SignatureError(f"reserved word used as {category} name: {n!r}")
        nominals = nominals | {canonical_nominal(i) for i in individuals}
        overlap = concepts & nominals
        if overlap:
            raise SignatureError(
                "concept and nominal names must be disjoint: " + ", ".join(sorted(overlap))
            )
        return Signature(concepts, nominals, roles, individuals)


# ---------------------------------------------------------------------------
# Role boxes


@dataclass(frozen=True)
class RoleAxiom:
    """Role inclusion axiom ``word ⊆ rhs``; the word never mentions U and the
    right-hand side is a plain role name other than U."""

    word: tuple[Role, ...]
    rhs: str

    def __post_init__(self):
        if not self.word:
            raise ValueError("inclusion axiom needs a nonempty word")
        if any(r.is_universal for r in self.word) or self.rhs == UNIVERSAL_NAME:
            raise ValueError("the universal role cannot appear in an inclusion axiom")

    def __str__(self) -> str:
        return " ".join(str(r) for r in self.word) + " <= " + self.rhs


ASSERTION_KINDS = ("Ref", "Irr", "Sym", "Asy", "Tra", "Dis")


@dataclass(frozen=True)
class RoleAssertion:
    kind: str
    role: Role
    other: Optional[Role] = None

    def __post_init__(self):
        if self.kind not in ASSERTION_KINDS:
            raise ValueError(f"unknown assertion kind: {self.kind}")
        if (self.kind == "Dis") != (self.other is not None):
            raise ValueError("Dis takes two roles, all other assertions one")

    def roles(self) -> tuple[Role, ...]:
        return (self.role,) if self.other is None else (self.role, self.other)

    def __str__(self) -> str:
        return self.kind + " " + " ".join(str(r) for r in self.roles())


@dataclass(frozen=True)
class RBox:
    """Role hierarchy, role assertions, and a user-supplied strict partial
    order on role names (closed implicitly under ``S ≺ R ⇔ S⁻ ≺ R``)."""

    hierarchy: tuple[RoleAxiom, ...] = ()
    assertions: tuple[RoleAssertion, ...] = ()
    order: frozenset[tuple[str, str]] = frozenset()

    def role_names(self) -> frozenset[str]:
        names = set()
        for axiom in self.hierarchy:
            names.update(r.name for r in axiom.word)
            names.add(axiom.rhs)
        for assertion in self.assertions:
            names.update(r.name for r in assertion.roles())
        for s, r in self.order:
            names.add(s)
            names.add(r)
        return frozenset(names)


EMPTY_RBOX = RBox()


# ---------------------------------------------------------------------------
# Canonical printing


def print_substitution(s: Substitution) -> str:
    return str(s)


def _print_postfix_base(c: Concept) -> str:
    """Print a substitution body so the postfix ``[...]`` binds to all of it."""
    if isinstance(c, (Bot, Name, Nominal, And, Or, Subst)) or c == TOP:
        return print_concept(c)  # already atomic or self-parenthesized
    return "(" + print_concept(c) + ")"


def print_concept(c: Concept) -> str:
    """Canonical text; ``parse_concept(print_concept(c)) == c`` for
    well-formed terms."""
    if c == TOP:
        return "top"
    if isinstance(c, Bot):
        return "bot"
    if isinstance(c, Name):
        return c.name
    if isinstance(c, Nominal):
        return "{" + c.name + "}"
    if isinstance(c, Not):
        return "!" + print_concept(c.body)
    if isinstance(c, And):
        return f"({print_concept(c.left)} & {print_concept(c.right)})"
    if isinstance(c, Or):
        return f"({print_concept(c.left)} | {print_concept(c.right)})"
    if isinstance(c, AtLeast):
        return f">={c.bound} {c.role} {print_concept(c.body)}"
    if isinstance(c, LessThan):
        return f"<{c.bound} {c.role} {print_concept(c.body)}"
    if isinstance(c, Exists):
        return f"exists {c.role}.{print_concept(c.body)}"
    if isinstance(c, Forall):
        return f"forall {c.role}.{print_concept(c.body)}"
    if isinstance(c, SelfLoop):
        return f"self {c.role}"
    if isinstance(c, Subst):
        return f"{_print_postfix_base(c.body)}[{c.sub}]"
    raise TypeError(f"not a concept: {c!r}")


# ---------------------------------------------------------------------------
# Well-formedness


def _check_role(role: Role, sig: Signature, out: list[str], context: str) -> None:
    if role.name not in sig.role_names:
        out.append(f"unknown role name {role.name!r} in {context}")


def well_formed(c: Concept, sig: Signature, rbox: RBox) -> list[str]:
    """Collect every violation of the concept invariants; empty means
    well-formed. Never raises: violations are returned, not thrown."""
    from .rbox import simple_roles  # deferred: analysis layer sits above syntax

    simple = simple_roles(rbox, sig)
    out: list[str] = []

    def visit(t: Concept) -> None:
        if isinstance(t, Name):
            if t.name in sig.nominal_names:
                out.append(f"nominal {t.name!r} used as a concept name (write {{{t.name}}})")
            elif t.name not in sig.concept_names:
                out.append(f"unknown concept name {t.name!r}")
        elif isinstance(t, Nominal):
            if t.name in sig.concept_names:
                out.append(f"concept name {t.name!r} used as a nominal")
            elif t.name not in sig.nominal_names:
                out.append(f"unknown nominal {t.name!r}")
        elif isinstance(t, (AtLeast, LessThan)):
            _check_role(t.role, sig, out, "counting quantifier")
            if t.role not in simple:
                out.append(f"counting quantifier uses non-simple role {t.role}")
        elif isinstance(t, (Exists, Forall)):
            _check_role(t.role, sig, out, "quantifier")
        elif isinstance(t, SelfLoop):
            _check_role(t.role, sig, out, "self restriction")
        elif isinstance(t, Subst):
            s = t.sub
            if isinstance(s, (ConceptAdd, ConceptDel)):
                if s.concept in sig.nominal_names:
                    out.append(f"substitution targets nominal {s.concept!r}, not a concept name")
                elif s.concept not in sig.concept_names:
                    out.append(f"unknown concept name {s.concept!r} in substitution")
                if s.individual not in sig.individual_names:
                    out.append(f"unknown individual {s.individual!r} in substitution")
            elif isinstance(s, (RoleAdd, RoleDel)):
                if s.role == UNIVERSAL_NAME:
                    out.append("substitution targets the universal role")
                elif s.role not in sig.role_names:
                    out.append(f"unknown role name {s.role!r} in substitution")
                for ind in (s.source, s.target):
                    if ind not in sig.individual_names:
                        out.append(f"unknown individual {ind!r} in substitution")
        for child in concept_children(t):
            visit(child)

    visit(c)
    return out
