"""Finite interpretations and the valuation semantics.

This module is the ground truth everything else is tested against: the
rewriting system, the bounded model search and the differential harness all
defer to :func:`eval_concept`. Substitutions are interpreted by updating the
interpretation, never the syntax.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional

from .errors import (
    EmptyDomainError,
    InterpretationFileError,
    SroiqError,
    UnknownNameError,
)
from .syntax import (
    And,
    AtLeast,
    Bot,
    Concept,
    ConceptAdd,
    ConceptDel,
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
    RoleDel,
    SelfLoop,
    Signature,
    Subst,
    Substitution,
    UNIVERSAL_NAME,
    canonical_nominal,
)

Pair = tuple[str, str]


@dataclass(frozen=True, eq=True)
class Interpretation:
    """A finite domain with valuations for every declared name.

    The universal role is never stored: its valuation is always the full
    cartesian square of the domain. Instances are immutable; substitution
    application returns a fresh interpretation.
    """

    domain: tuple[str, ...]
    concept_val: Mapping[str, frozenset[str]]
    role_val: Mapping[str, frozenset[Pair]]
    nominal_val: Mapping[str, str]
    individual_val: Mapping[str, str]

    @staticmethod
    def make(
        domain: Iterable[str],
        concepts: Optional[Mapping[str, Iterable[str]]] = None,
        roles: Optional[Mapping[str, Iterable[Pair]]] = None,
        nominals: Optional[Mapping[str, str]] = None,
        individuals: Optional[Mapping[str, str]] = None,
    ) -> "Interpretation":
        domain = tuple(domain)
        if not domain:
            raise EmptyDomainError("the domain must be nonempty")
        if len(set(domain)) != len(domain):
            raise SroiqError("duplicate domain elements")
        elements = set(domain)
        concept_val = {name: frozenset(members) for name, members in (concepts or {}).items()}
        role_val = {
            name: frozenset((x, y) for x, y in pairs) for name, pairs in (roles or {}).items()
        }
        nominal_val = dict(nominals or {})
        individual_val = dict(individuals or {})
        if UNIVERSAL_NAME in role_val:
            raise SroiqError("the universal role has a fixed valuation and cannot be stored")
        for name, members in concept_val.items():
            if not members <= elements:
                raise SroiqError(f"concept {name!r} valuated outside the domain")
        for name, pairs in role_val.items():
            for x, y in pairs:
                if x not in elements or y not in elements:
                    raise SroiqError(f"role {name!r} valuated outside the domain")
        for kind, mapping in (("nominal", nominal_val), ("individual", individual_val)):
            for name, element in mapping.items():
                if element not in elements:
                    raise SroiqError(f"{kind} {name!r} valuated outside the domain")
        for ind, element in individual_val.items():
            pinned = nominal_val.get(canonical_nominal(ind))
            if pinned is None:
                nominal_val[canonical_nominal(ind)] = element
            elif pinned != element:
                raise SroiqError(
                    f"canonical nominal {canonical_nominal(ind)!r} disagrees with"
                    f" individual {ind!r}"
                )
        return Interpretation(domain, concept_val, role_val, nominal_val, dict(individual_val))

    def element_set(self) -> frozenset[str]:
        return frozenset(self.domain)


def eval_role(role: Role, interp: Interpretation) -> frozenset[Pair]:
    """Valuation of a role: stored pairs, their swaps for an inverse, or the
    full square for the universal role."""
    if role.is_universal:
        return frozenset((x, y) for x in interp.domain for y in interp.domain)
    try:
        pairs = interp.role_val[role.name]
    except KeyError:
        raise UnknownNameError(f"role {role.name!r} has no valuation") from None
    if role.inverse:
        return frozenset((y, x) for x, y in pairs)
    return pairs


def eval_role_word(word: Iterable[Role], interp: Interpretation) -> frozenset[Pair]:
    """Relational composition of the word's roles, left to right."""
    roles = list(word)
    if not roles:
        raise SroiqError("role words are nonempty")
    result = eval_role(roles[0], interp)
    for role in roles[1:]:
        step = eval_role(role, interp)
        by_source: dict[str, set[str]] = {}
        for x, y in step:
            by_source.setdefault(x, set()).add(y)
        result = frozenset(
            (x, z) for x, y in result for z in by_source.get(y, ())
        )
    return result


def apply_subst(interp: Interpretation, sub: Substitution) -> Interpretation:
    """Interpretation update: adds or removes a concept member or role edge.

    The input is never modified; epsilon returns it unchanged.
    """
    if isinstance(sub, Epsilon):
        return interp
    if isinstance(sub, (ConceptAdd, ConceptDel)):
        try:
            members = interp.concept_val[sub.concept]
        except KeyError:
            raise UnknownNameError(f"concept {sub.concept!r} has no valuation") from None
        element = _individual_element(interp, sub.individual)
        if isinstance(sub, ConceptAdd):
            members = members | {element}
        else:
            members = members - {element}
        concept_val = dict(interp.concept_val)
        concept_val[sub.concept] = members
        return replace(interp, concept_val=concept_val)
    if isinstance(sub, (RoleAdd, RoleDel)):
        if sub.role == UNIVERSAL_NAME:
            raise SroiqError("the universal role cannot be substituted")
        try:
            pairs = interp.role_val[sub.role]
        except KeyError:
            raise UnknownNameError(f"role {sub.role!r} has no valuation") from None
        edge = (_individual_element(interp, sub.source), _individual_element(interp, sub.target))
        if isinstance(sub, RoleAdd):
            pairs = pairs | {edge}
        else:
            pairs = pairs - {edge}
        role_val = dict(interp.role_val)
        role_val[sub.role] = pairs
        return replace(interp, role_val=role_val)
    raise TypeError(f"not a substitution: {sub!r}")


def _individual_element(interp: Interpretation, individual: str) -> str:
    try:
        return interp.individual_val[individual]
    except KeyError:
        raise UnknownNameError(f"individual {individual!r} has no valuation") from None


def eval_concept(concept: Concept, interp: Interpretation) -> frozenset[str]:
    """The valuation of a concept as a set of domain elements."""
    if isinstance(concept, Bot):
        return frozenset()
    if isinstance(concept, Name):
        try:
            return interp.concept_val[concept.name]
        except KeyError:
            raise UnknownNameError(f"concept {concept.name!r} has no valuation") from None
    if isinstance(concept, Nominal):
        try:
            return frozenset((interp.nominal_val[concept.name],))
        except KeyError:
            raise UnknownNameError(f"nominal {concept.name!r} has no valuation") from None
    if isinstance(concept, Not):
        return interp.element_set() - eval_concept(concept.body, interp)
    if isinstance(concept, And):
        return eval_concept(concept.left, interp) & eval_concept(concept.right, interp)
    if isinstance(concept, Or):
        return eval_concept(concept.left, interp) | eval_concept(concept.right, interp)
    if isinstance(concept, (AtLeast, LessThan)):
        pairs = eval_role(concept.role, interp)
        members = eval_concept(concept.body, interp)
        counts: dict[str, int] = {x: 0 for x in interp.domain}
        for x, y in pairs:
            if y in members:
                counts[x] += 1
        if isinstance(concept, AtLeast):
            return frozenset(x for x, n in counts.items() if n >= concept.bound)
        return frozenset(x for x, n in counts.items() if n < concept.bound)
    if isinstance(concept, Exists):
        pairs = eval_role(concept.role, interp)
        members = eval_concept(concept.body, interp)
        return frozenset(x for x, y in pairs if y in members)
    if isinstance(concept, Forall):
        pairs = eval_role(concept.role, interp)
        members = eval_concept(concept.body, interp)
        failing = frozenset(x for x, y in pairs if y not in members)
        return interp.element_set() - failing
    if isinstance(concept, SelfLoop):
        pairs = eval_role(concept.role, interp)
        return frozenset(x for x, y in pairs if x == y)
    if isinstance(concept, Subst):
        return eval_concept(concept.body, apply_subst(interp, concept.sub))
    raise TypeError(f"not a concept: {concept!r}")


# ---------------------------------------------------------------------------
# Role box satisfaction


@dataclass(frozen=True)
class RBoxEntry:
    description: str
    satisfied: bool


@dataclass(frozen=True)
class RBoxReport:
    entries: tuple[RBoxEntry, ...]

    @property
    def all_satisfied(self) -> bool:
        return all(entry.satisfied for entry in self.entries)


def _assertion_holds(assertion: RoleAssertion, interp: Interpretation) -> bool:
    pairs = eval_role(assertion.role, interp)
    diag = frozenset((x, x) for x in interp.domain)
    if assertion.kind == "Ref":
        return diag <= pairs
    if assertion.kind == "Irr":
        return not (diag & pairs)
    if assertion.kind == "Sym":
        return all((y, x) in pairs for x, y in pairs)
    if assertion.kind == "Asy":
        return all((y, x) not in pairs for x, y in pairs)
    if assertion.kind == "Tra":
        by_source: dict[str, set[str]] = {}
        for x, y in pairs:
            by_source.setdefault(x, set()).add(y)
        return all(
            (x, z) in pairs for x, y in pairs for z in by_source.get(y, ())
        )
    if assertion.kind == "Dis":
        return not (pairs & eval_role(assertion.other, interp))
    raise ValueError(f"unknown assertion kind: {assertion.kind}")


def rbox_satisfied(interp: Interpretation, rbox: RBox) -> RBoxReport:
    """Check every inclusion axiom and role assertion; one entry each."""
    entries: list[RBoxEntry] = []
    for axiom in rbox.hierarchy:
        holds = eval_role_word(axiom.word, interp) <= eval_role(Role(axiom.rhs), interp)
        entries.append(RBoxEntry(str(axiom), holds))
    for assertion in rbox.assertions:
        entries.append(RBoxEntry(str(assertion), _assertion_holds(assertion, interp)))
    return RBoxReport(tuple(entries))


# ---------------------------------------------------------------------------
# Interpretation files (JSON)

_INTERP_KEYS = frozenset({"domain", "concepts", "roles", "nominals", "individuals"})


def interpretation_from_data(data: dict, sig: Optional[Signature] = None) -> Interpretation:
    """Build an interpretation from parsed JSON; strict about keys and names.

    With a signature, every name must be declared there, missing concept and
    role valuations default to empty, and every declared individual and
    non-canonical nominal must be valuated.
    """
    if not isinstance(data, dict):
        raise InterpretationFileError("expected a top-level object")
    unknown = set(data) - _INTERP_KEYS
    if unknown:
        raise InterpretationFileError(f"unknown keys: {', '.join(sorted(unknown))}")
    if "domain" not in data or not data["domain"]:
        raise EmptyDomainError("the domain must be nonempty")
    concepts = {name: set(members) for name, members in data.get("concepts", {}).items()}
    roles = {}
    for name, edges in data.get("roles", {}).items():
        if name == UNIVERSAL_NAME:
            raise InterpretationFileError("the universal role must not appear under 'roles'")
        parsed = []
        for edge in edges:
            if not isinstance(edge, (list, tuple)) or len(edge) != 2:
                raise InterpretationFileError(f"role {name!r}: edges must be 2-arrays")
            parsed.append((edge[0], edge[1]))
        roles[name] = parsed
    nominals = dict(data.get("nominals", {}))
    individuals = dict(data.get("individuals", {}))
    if sig is not None:
        for category, given, declared in (
            ("concept", concepts, sig.concept_names),
            ("role", roles, sig.role_names),
            ("nominal", nominals, sig.nominal_names),
            ("individual", individuals, sig.individual_names),
        ):
            for name in given:
                if name not in declared:
                    raise InterpretationFileError(f"unknown {category} name {name!r}")
        for name in sig.concept_names - set(concepts):
            concepts[name] = set()
        for name in sig.role_names - set(roles) - {UNIVERSAL_NAME}:
            roles[name] = []
        for ind in sig.individual_names:
            if ind not in individuals:
                raise InterpretationFileError(f"individual {ind!r} has no valuation")
        canonical = {canonical_nominal(i) for i in sig.individual_names}
        for name in sig.nominal_names - canonical:
            if name not in nominals:
                raise InterpretationFileError(f"nominal {name!r} has no valuation")
    try:
        return Interpretation.make(data["domain"], concepts, roles, nominals, individuals)
    except InterpretationFileError:
        raise
    except SroiqError as exc:
        raise InterpretationFileError(exc.message) from exc


def load_interpretation(path: str, sig: Optional[Signature] = None) -> Interpretation:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InterpretationFileError(f"invalid JSON: {exc}") from exc
    return interpretation_from_data(data, sig)


def interpretation_to_data(interp: Interpretation) -> dict:
    """Serializable form matching the interpretation file format."""
    return {
        "domain": list(interp.domain),
        "concepts": {
            name: sorted(members) for name, members in sorted(interp.concept_val.items())
        },
        "roles": {
            name: [list(edge) for edge in sorted(pairs)]
            for name, pairs in sorted(interp.role_val.items())
        },
        "nominals": dict(sorted(interp.nominal_val.items())),
        "individuals": dict(sorted(interp.individual_val.items())),
    }
