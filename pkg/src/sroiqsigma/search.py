"""Bounded finite-model satisfiability search.

Sound and deliberately incomplete: a SAT verdict always ships a witness that
the independent validator accepts, and exhausting the bounded space yields
UNKNOWN, never "unsatisfiable". Exhaustive mode enumerates candidates in a
fixed canonical order (domain size ascending, canonical pin assignments,
then valuation bitmasks by population count), so sparse witnesses are found
early and identical queries always return the identical witness.

Only names occurring in the query (concept plus role box) are enumerated;
all other declared names are fixed to the empty valuation, which cannot
affect the outcome. Domain elements are interchangeable except where pinned
by individuals and nominals, so pin assignments range over canonical
restricted-growth strings only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import SearchInternalError, SearchPreconditionError
from .gen import restricted_growth_strings
from .rbox import check_regular, check_simple_assertions, simple_roles
from .semantics import (
    Interpretation,
    RBoxReport,
    eval_concept,
    rbox_satisfied,
)
from .syntax import (
    Concept,
    NamesUsed,
    RBox,
    Signature,
    UNIVERSAL_NAME,
    canonical_nominal,
    contains_subst,
    names_used,
)

MODES = ("exhaustive", "randomized")


@dataclass(frozen=True)
class SatQuery:
    concept: Concept
    rbox: RBox
    sig: Signature
    max_domain: int
    mode: str = "exhaustive"
    seed: Optional[int] = None
    trials: Optional[int] = None
    at_individual: Optional[str] = None

    def validate(self) -> None:
        if self.max_domain < 1:
            raise SearchPreconditionError("max_domain must be at least 1")
        if self.mode not in MODES:
            raise SearchPreconditionError(f"unknown mode {self.mode!r}")
        if self.mode == "randomized" and (self.seed is None or not self.trials):
            raise SearchPreconditionError("randomized mode needs a seed and a trial count")
        if contains_subst(self.concept):
            raise SearchPreconditionError(
                "the concept still contains substitutions; normalize it first"
            )
        if not check_regular(self.rbox).regular:
            raise SearchPreconditionError("the role hierarchy is not regular")
        if check_simple_assertions(self.rbox, simple_roles(self.rbox, self.sig)):
            raise SearchPreconditionError("the role assertions mention non-simple roles")
        if self.at_individual is not None and (
            self.at_individual not in self.sig.individual_names
        ):
            raise SearchPreconditionError(f"unknown individual {self.at_individual!r}")


@dataclass(frozen=True)
class SearchStats:
    examined: int


@dataclass(frozen=True)
class SatResult:
    verdict: str  # "SAT" or "UNKNOWN"
    witness: Optional[Interpretation]
    element: Optional[str]
    stats: SearchStats


@dataclass(frozen=True)
class ModelReport:
    members: frozenset[str]
    rbox_report: RBoxReport
    coherence_violations: tuple[str, ...]
    at_individual: Optional[str] = None
    at_member: Optional[bool] = None

    @property
    def nonempty(self) -> bool:
        return bool(self.members)

    @property
    def ok(self) -> bool:
        satisfied = self.nonempty if self.at_member is None else self.at_member
        return satisfied and self.rbox_report.all_satisfied and not self.coherence_violations


def check_model(
    concept: Concept,
    interp: Interpretation,
    rbox: RBox,
    at_individual: Optional[str] = None,
) -> ModelReport:
    """The validator: concept valuation, per-axiom role box satisfaction and
    canonical-nominal coherence, computed by the semantics module alone."""
    members = eval_concept(concept, interp)
    coherence = []
    for ind, element in sorted(interp.individual_val.items()):
        pinned = interp.nominal_val.get(canonical_nominal(ind))
        if pinned != element:
            coherence.append(
                f"nominal {canonical_nominal(ind)!r} is {pinned!r}"
                f" but individual {ind!r} is {element!r}"
            )
    at_member = None
    if at_individual is not None:
        at_member = interp.individual_val.get(at_individual) in members
    return ModelReport(
        members=members,
        rbox_report=rbox_satisfied(interp, rbox),
        coherence_violations=tuple(coherence),
        at_individual=at_individual,
        at_member=at_member,
    )


# ---------------------------------------------------------------------------
# Candidate enumeration


def _query_names(concept: Concept, rbox: RBox, sig: Signature) -> NamesUsed:
    used = names_used(concept)
    return NamesUsed(
        used.concepts,
        used.nominals,
        used.roles | rbox.role_names(),
        used.individuals,
    )


def _pins(names: NamesUsed, sig: Signature, at: Optional[str]) -> tuple[list[str], list[str]]:
    individuals = set(names.individuals)
    if at is not None:
        individuals.add(at)
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


def _build(
    sig: Signature,
    domain: tuple[str, ...],
    concepts: list[str],
    concept_bits: frozenset,
    roles: list[str],
    role_bits: frozenset,
    pin_val: dict[str, str],
    free_nominal_val: dict[str, str],
) -> Interpretation:
    concept_val = {name: frozenset() for name in sig.concept_names}
    for name in concepts:
        concept_val[name] = frozenset(x for c, x in concept_bits if c == name)
    role_val = {name: frozenset() for name in sig.role_names - {UNIVERSAL_NAME}}
    for name in roles:
        role_val[name] = frozenset((x, y) for r, x, y in role_bits if r == name)
    individual_val = {ind: domain[0] for ind in sig.individual_names}
    individual_val.update(pin_val)
    nominal_val = {nom: domain[0] for nom in sig.nominal_names}
    nominal_val.update(free_nominal_val)
    for ind, element in individual_val.items():
        nominal_val[canonical_nominal(ind)] = element
    return Interpretation(domain, concept_val, role_val, nominal_val, individual_val)


def _candidates(q: SatQuery) -> Iterator[Interpretation]:
    names = _query_names(q.concept, q.rbox, q.sig)
    concepts = sorted(names.concepts)
    roles = sorted(names.roles - {UNIVERSAL_NAME})
    individuals, free_nominals = _pins(names, q.sig, q.at_individual)
    pins = individuals + free_nominals
    for size in range(1, q.max_domain + 1):
        domain = tuple(f"e{k}" for k in range(size))
        positions = [("concept", name, x) for name in concepts for x in domain]
        positions += [("role", name, (x, y)) for name in roles for x in domain for y in domain]
        for assignment in restricted_growth_strings(len(pins), size - 1):
            pin_val = {pins[k]: domain[assignment[k]] for k in range(len(individuals))}
            free_val = {
                pins[k]: domain[assignment[k]] for k in range(len(individuals), len(pins))
            }
            for count in range(len(positions) + 1):
                for chosen in itertools.combinations(positions, count):
                    concept_bits = frozenset(
                        (name, x) for kind, name, x in chosen if kind == "concept"
                    )
                    role_bits = frozenset(
                        (name, xy[0], xy[1]) for kind, name, xy in chosen if kind == "role"
                    )
                    yield _build(
                        q.sig, domain, concepts, concept_bits, roles, role_bits,
                        pin_val, free_val,
                    )


def _random_candidates(q: SatQuery) -> Iterator[Interpretation]:
    names = _query_names(q.concept, q.rbox, q.sig)
    concepts = sorted(names.concepts)
    roles = sorted(names.roles - {UNIVERSAL_NAME})
    individuals, free_nominals = _pins(names, q.sig, q.at_individual)
    rng = random.Random(q.seed)
    for _ in range(q.trials):
        size = rng.randint(1, q.max_domain)
        domain = tuple(f"e{k}" for k in range(size))
        density = rng.choice((0.15, 0.3, 0.5))
        concept_bits = frozenset(
            (name, x) for name in concepts for x in domain if rng.random() < density
        )
        role_bits = frozenset(
            (name, x, y)
            for name in roles
            for x in domain
            for y in domain
            if rng.random() < density
        )
        pin_val = {ind: rng.choice(domain) for ind in individuals}
        free_val = {nom: rng.choice(domain) for nom in free_nominals}
        yield _build(q.sig, domain, concepts, concept_bits, roles, role_bits, pin_val, free_val)


def _satisfying_element(q: SatQuery, interp: Interpretation) -> Optional[str]:
    if not rbox_satisfied(interp, q.rbox).all_satisfied:
        return None
    members = eval_concept(q.concept, interp)
    if q.at_individual is not None:
        element = interp.individual_val[q.at_individual]
        return element if element in members else None
    for element in interp.domain:  # deterministic: first in domain order
        if element in members:
            return element
    return None


def sat_bounded(q: SatQuery) -> SatResult:
    """Search interpretations up to the domain bound; SAT verdicts are
    re-validated with :func:`check_model` before being returned."""
    q.validate()
    candidates = _candidates(q) if q.mode == "exhaustive" else _random_candidates(q)
    examined = 0
    for interp in candidates:
        examined += 1
        element = _satisfying_element(q, interp)
        if element is None:
            continue
        report = check_model(q.concept, interp, q.rbox, q.at_individual)
        if not report.ok or element not in report.members:
            raise SearchInternalError(
                "search produced a witness the validator rejects"
            )
        return SatResult("SAT", interp, element, SearchStats(examined))
    return SatResult("UNKNOWN", None, None, SearchStats(examined))
