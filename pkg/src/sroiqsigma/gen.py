"""Seeded random generators and exhaustive interpretation enumeration.

Everything here is driven by an explicit ``random.Random`` so identical
seeds reproduce identical terms and models, which the differential harness
and the acceptance suite rely on.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .semantics import Interpretation
from .syntax import (
    And,
    AtLeast,
    BOT,
    Concept,
    ConceptAdd,
    ConceptDel,
    EPSILON,
    Exists,
    Forall,
    LessThan,
    Name,
    Nominal,
    NamesUsed,
    Not,
    Or,
    Role,
    RoleAdd,
    RoleDel,
    SelfLoop,
    Signature,
    Subst,
    Substitution,
    UNIVERSAL,
    canonical_nominal,
    names_used,
)


def default_gen_signature() -> Signature:
    """Small signature used for randomized term and model generation."""
    return Signature.make(
        concepts=("A", "B"),
        nominals=("N1", "N2"),
        roles=("R", "S", "T"),
        individuals=("a", "b", "c"),
    )


def random_role(rng: random.Random, sig: Signature, allow_universal: bool = False) -> Role:
    if allow_universal and rng.random() < 0.1:
        return UNIVERSAL
    name = rng.choice(sorted(sig.role_names - {"U"}))
    return Role(name, inverse=rng.random() < 0.4)


def random_substitution(rng: random.Random, sig: Signature) -> Substitution:
    individuals = sorted(sig.individual_names)
    kind = rng.choices(("eps", "cadd", "cdel", "radd", "rdel"), weights=(1, 3, 3, 3, 3))[0]
    if kind == "eps":
        return EPSILON
    if kind in ("cadd", "cdel"):
        concept = rng.choice(sorted(sig.concept_names))
        individual = rng.choice(individuals)
        return (ConceptAdd if kind == "cadd" else ConceptDel)(concept, individual)
    role = rng.choice(sorted(sig.role_names - {"U"}))
    cls = RoleAdd if kind == "radd" else RoleDel
    return cls(role, rng.choice(individuals), rng.choice(individuals))


def random_concept(
    rng: random.Random,
    sig: Signature,
    depth: int,
    subst_budget: int = 0,
) -> Concept:
    """A random well-formed term of the given constructor depth at most, with
    at most ``subst_budget`` substitution nodes stacked along any path."""
    choices = ["leaf"] * 2
    if depth > 0:
        choices += ["not"] * 2 + ["and", "or"] * 2 + ["exists", "forall"] * 2
        choices += ["atleast", "lessthan", "self"]
    if subst_budget > 0:
        choices += ["subst"] * 2
    kind = rng.choice(choices)
    if kind == "leaf":
        leaf = rng.choice(("bot", "name", "name", "nominal"))
        if leaf == "bot":
            return BOT
        if leaf == "name":
            return Name(rng.choice(sorted(sig.concept_names)))
        return Nominal(rng.choice(sorted(sig.nominal_names)))
    if kind == "not":
        return Not(random_concept(rng, sig, depth - 1, subst_budget))
    if kind in ("and", "or"):
        left = random_concept(rng, sig, depth - 1, subst_budget)
        right = random_concept(rng, sig, depth - 1, subst_budget)
        return (And if kind == "and" else Or)(left, right)
    if kind in ("atleast", "lessthan"):
        role = random_role(rng, sig)
        bound = rng.randint(0, 3)
        body = random_concept(rng, sig, depth - 1, subst_budget)
        return (AtLeast if kind == "atleast" else LessThan)(bound, role, body)
    if kind in ("exists", "forall"):
        role = random_role(rng, sig, allow_universal=True)
        body = random_concept(rng, sig, depth - 1, subst_budget)
        return (Exists if kind == "exists" else Forall)(role, body)
    if kind == "self":
        return SelfLoop(random_role(rng, sig))
    return Subst(
        random_concept(rng, sig, depth, subst_budget - 1), random_substitution(rng, sig)
    )


def _pinned_individuals(names: NamesUsed, sig: Signature) -> tuple[list[str], list[str]]:
    """Individuals that need a valuation (directly used or behind a canonical
    nominal) and the remaining free nominals."""
    individuals = set(names.individuals)
    free_nominals = []
    for nominal in sorted(names.nominals):
        owner = next(
            (i for i in sig.individual_names if canonical_nominal(i) == nominal), None
        )
        if owner is not None:
            individuals.add(owner)
        else:
            free_nominals.append(nominal)
    return sorted(individuals), free_nominals


def random_interpretation(
    rng: random.Random,
    sig: Signature,
    max_domain: int,
    names: Optional[NamesUsed] = None,
    concept: Optional[Concept] = None,
) -> Interpretation:
    """A random interpretation covering the given names (or those of the
    given concept); canonical nominals are always pinned to their
    individuals."""
    if names is None:
        if concept is not None:
            names = names_used(concept)
        else:
            names = NamesUsed(
                sig.concept_names,
                sig.nominal_names,
                sig.role_names - {"U"},
                sig.individual_names,
            )
    size = rng.randint(1, max_domain)
    domain = tuple(f"e{k}" for k in range(size))
    concepts = {
        name: frozenset(x for x in domain if rng.random() < 0.5)
        for name in sorted(names.concepts)
    }
    pairs = [(x, y) for x in domain for y in domain]
    roles = {
        name: frozenset(p for p in pairs if rng.random() < 0.5)
        for name in sorted(names.roles)
    }
    individuals, free_nominals = _pinned_individuals(names, sig)
    individual_val = {i: rng.choice(domain) for i in individuals}
    nominal_val = {n: rng.choice(domain) for n in free_nominals}
    return Interpretation.make(domain, concepts, roles, nominal_val, individual_val)


def _powerset(items: tuple) -> list[frozenset]:
    out = []
    for k in range(len(items) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(items, k))
    return out


def enumerate_interpretations(
    names: NamesUsed, sig: Signature, max_domain: int
) -> Iterator[Interpretation]:
    """Every interpretation of the given names over domains of size 1 to
    ``max_domain``; exact and finite, for exhaustive equivalence checks."""
    concepts = sorted(names.concepts)
    roles = sorted(names.roles)
    individuals, free_nominals = _pinned_individuals(names, sig)
    for size in range(1, max_domain + 1):
        domain = tuple(f"e{k}" for k in range(size))
        pairs = tuple((x, y) for x in domain for y in domain)
        concept_options = _powerset(domain)
        role_options = _powerset(pairs)
        for ind_choice in itertools.product(domain, repeat=len(individuals)):
            individual_val = dict(zip(individuals, ind_choice))
            for nom_choice in itertools.product(domain, repeat=len(free_nominals)):
                nominal_val = dict(zip(free_nominals, nom_choice))
                for concept_choice in itertools.product(concept_options, repeat=len(concepts)):
                    concept_val = dict(zip(concepts, concept_choice))
                    for role_choice in itertools.product(role_options, repeat=len(roles)):
                        role_val = dict(zip(roles, role_choice))
                        yield Interpretation.make(
                            domain, concept_val, role_val, nominal_val, individual_val
                        )


def restricted_growth_strings(length: int, max_value: int) -> Iterator[tuple[int, ...]]:
    """Canonical assignments for interchangeable elements: each position may
    reuse an earlier value or introduce the next fresh one (capped)."""
    if length == 0:
        yield ()
        return

    def extend(prefix: tuple[int, ...], used: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for value in range(min(used + 1, max_value) + 1):
            yield from extend(prefix + (value,), max(used, value))

    yield from extend((), -1)
