"""Differential testing of the translation rules against the semantics.

For each rule, random instantiations of the left-hand side are evaluated
against the right-hand side produced by the rewriter on randomly generated
interpretations; any disagreement is reported as a counterexample with the
full instantiation and model. An exhaustive mode enumerates every
interpretation of a fixed instantiation over small domains.

The module also carries deliberately wrong right-hand sides (operator flips,
swapped individuals, and the literal printed forms of the two inverse-role
rules whose statements drop the inverse) so tests can demonstrate that the
harness actually finds unsound rules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import RewriteInternalError
from .gen import (
    default_gen_signature,
    enumerate_interpretations,
    random_concept,
    random_interpretation,
)
from .rewrite import _counting_same_role_rhs, _exists_same_role_rhs, match_rule
from .semantics import Interpretation, eval_concept, interpretation_to_data
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
    Not,
    Or,
    NamesUsed,
    Role,
    RoleAdd,
    RoleDel,
    SelfLoop,
    Subst,
    canonical_nominal,
    names_used,
    print_concept,
)

RULE_IDS = tuple(range(1, 42))


@dataclass(frozen=True)
class Counterexample:
    trial: int
    lhs: Concept
    rhs: Concept
    interpretation: Interpretation
    lhs_members: frozenset[str]
    rhs_members: frozenset[str]

    def describe(self) -> str:
        return (
            f"trial {self.trial}: {print_concept(self.lhs)} evaluates to"
            f" {sorted(self.lhs_members)} but {print_concept(self.rhs)} to"
            f" {sorted(self.rhs_members)} in {interpretation_to_data(self.interpretation)}"
        )


@dataclass(frozen=True)
class EquivReport:
    rule_id: int
    trials: int
    max_domain: int
    seed: Optional[int]
    counterexamples: tuple[Counterexample, ...]
    exhaustive: bool = False

    @property
    def ok(self) -> bool:
        return not self.counterexamples


# ---------------------------------------------------------------------------
# Rule instantiation

_SIG = default_gen_signature()


def _body(rng: random.Random, depth: int = 2) -> Concept:
    return random_concept(rng, _SIG, depth)


def _ind(rng: random.Random) -> str:
    return rng.choice(("a", "b", "c"))


def _concept_sub(rng: random.Random, concept: Optional[str] = None):
    cls = rng.choice((ConceptAdd, ConceptDel))
    return cls(concept or rng.choice(("A", "B")), _ind(rng))


def _role_sub(rng: random.Random, role: Optional[str] = None):
    cls = rng.choice((RoleAdd, RoleDel))
    return cls(role or rng.choice(("R", "S", "T")), _ind(rng), _ind(rng))


def _role_add(rng: random.Random, role: str) -> RoleAdd:
    return RoleAdd(role, _ind(rng), _ind(rng))


def _role_del(rng: random.Random, role: str) -> RoleDel:
    return RoleDel(role, _ind(rng), _ind(rng))


def _other_role(role: str) -> str:
    return "T" if role != "T" else "R"


def _counting(rng: random.Random, role: Role) -> Concept:
    cls = rng.choice((AtLeast, LessThan))
    return cls(rng.randint(0, 3), role, _body(rng))


def _named(rng: random.Random) -> str:
    return rng.choice(("R", "S"))


def instantiate_rule(rule_id: int, rng: random.Random) -> Subst:
    """A random redex matching the given rule."""
    if rule_id == 0:
        body = rng.choice(
            (
                Name("A"),
                SelfLoop(Role("R")),
                AtLeast(1, Role("S"), _body(rng)),
                Exists(Role("R"), _body(rng)),
                Forall(Role("S", inverse=True), _body(rng)),
            )
        )
        return Subst(body, EPSILON)
    if rule_id == 1:
        return Subst(BOT, random_sub(rng))
    if rule_id == 2:
        nominal = rng.choice(("N1", "N2", canonical_nominal("a")))
        return Subst(Nominal(nominal), random_sub(rng))
    if rule_id == 3:
        return Subst(Name(rng.choice(("A", "B"))), _role_sub(rng))
    if rule_id == 4:
        return Subst(Name("A"), _concept_sub(rng, "B"))
    if rule_id == 5:
        c = rng.choice(("A", "B"))
        return Subst(Name(c), ConceptAdd(c, _ind(rng)))
    if rule_id == 6:
        c = rng.choice(("A", "B"))
        return Subst(Name(c), ConceptDel(c, _ind(rng)))
    if rule_id == 7:
        return Subst(Not(_body(rng)), random_sub(rng))
    if rule_id == 8:
        return Subst(Or(_body(rng), _body(rng)), random_sub(rng))
    if rule_id == 9:
        return Subst(And(_body(rng), _body(rng)), random_sub(rng))
    if rule_id in (10, 11):
        role = Role(_named(rng), inverse=rule_id == 11)
        return Subst(SelfLoop(role), _concept_sub(rng))
    if rule_id in (12, 13):
        role = Role(_named(rng), inverse=rule_id == 13)
        return Subst(SelfLoop(role), _role_sub(rng, _other_role(role.name)))
    if rule_id in (14, 15, 16, 17):
        name = _named(rng)
        inverse = rule_id in (16, 17)
        make = _role_add if rule_id in (14, 17) else _role_del
        return Subst(SelfLoop(Role(name, inverse=inverse)), make(rng, name))
    if rule_id in (18, 19):
        role = Role(_named(rng), inverse=rule_id == 19)
        return Subst(_counting(rng, role), _concept_sub(rng))
    if rule_id in (20, 21):
        role = Role(_named(rng), inverse=rule_id == 21)
        return Subst(_counting(rng, role), _role_sub(rng, _other_role(role.name)))
    if rule_id in (22, 23, 24, 25):
        name = _named(rng)
        inverse = rule_id in (23, 25)
        make = _role_add if rule_id in (22, 23) else _role_del
        return Subst(_counting(rng, Role(name, inverse=inverse)), make(rng, name))
    if rule_id in (26, 27, 34, 35):
        quant = Exists if rule_id in (26, 27) else Forall
        inverse = rule_id in (27, 35)
        role = Role(_named(rng), inverse=inverse)
        if not inverse and rng.random() < 0.15:
            role = Role("U")
        return Subst(quant(role, _body(rng)), _concept_sub(rng))
    if rule_id in (28, 29, 36, 37):
        quant = Exists if rule_id in (28, 29) else Forall
        inverse = rule_id in (29, 37)
        role = Role(_named(rng), inverse=inverse)
        return Subst(quant(role, _body(rng)), _role_sub(rng, _other_role(role.name)))
    if rule_id in (30, 31, 32, 33):
        name = _named(rng)
        inverse = rule_id in (31, 33)
        make = _role_add if rule_id in (30, 31) else _role_del
        return Subst(Exists(Role(name, inverse=inverse), _body(rng)), make(rng, name))
    if rule_id in (38, 39, 40, 41):
        name = _named(rng)
        inverse = rule_id in (39, 41)
        make = _role_add if rule_id in (38, 39) else _role_del
        return Subst(Forall(Role(name, inverse=inverse), _body(rng)), make(rng, name))
    raise ValueError(f"no rule {rule_id}")


def random_sub(rng: random.Random):
    kind = rng.choice(("eps", "concept", "role"))
    if kind == "eps":
        return EPSILON
    if kind == "concept":
        return _concept_sub(rng)
    return _role_sub(rng)


# ---------------------------------------------------------------------------
# Checking


def _compare(
    lhs: Concept,
    rhs: Concept,
    interp: Interpretation,
    trial: int,
) -> Optional[Counterexample]:
    lhs_members = eval_concept(lhs, interp)
    rhs_members = eval_concept(rhs, interp)
    if lhs_members != rhs_members:
        return Counterexample(trial, lhs, rhs, interp, lhs_members, rhs_members)
    return None


def sound_rhs(lhs: Subst) -> Concept:
    matched = match_rule(lhs)
    if matched is None:
        raise RewriteInternalError("instantiation is not a redex")
    _, rhs = matched
    return rhs


def equiv_check(
    rule_id: int,
    trials: int,
    max_domain: int,
    seed: int,
    rhs_builder: Optional[Callable[[Subst], Concept]] = None,
    stop_at_first: bool = False,
) -> EquivReport:
    """Random differential check of a rule; with ``rhs_builder``, of an
    alternative right-hand side (used for mutation and typo regression)."""
    rng = random.Random(seed)
    counterexamples: list[Counterexample] = []
    for trial in range(trials):
        lhs = instantiate_rule(rule_id, rng)
        if rhs_builder is None:
            matched = match_rule(lhs)
            if matched is None or matched[0] != rule_id:
                raise RewriteInternalError(
                    f"instantiation for rule {rule_id} dispatched to {matched}"
                )
            rhs = matched[1]
        else:
            rhs = rhs_builder(lhs)
        interp = random_interpretation(
            rng, _SIG, max_domain, names=_names_for(lhs, rhs)
        )
        ce = _compare(lhs, rhs, interp, trial)
        if ce is not None:
            counterexamples.append(ce)
            if stop_at_first:
                break
    return EquivReport(rule_id, trials, max_domain, seed, tuple(counterexamples))


def _names_for(lhs: Concept, rhs: Concept) -> NamesUsed:
    left, right = names_used(lhs), names_used(rhs)
    return NamesUsed(
        left.concepts | right.concepts,
        left.nominals | right.nominals,
        left.roles | right.roles,
        left.individuals | right.individuals,
    )


def equiv_check_exhaustive(
    rule_id: int,
    instances: Optional[Iterable[Subst]] = None,
    max_domain: int = 3,
) -> EquivReport:
    """Exact set equality over every interpretation of each instantiation
    with domains up to ``max_domain``."""
    if instances is None:
        instances = fixed_instances(rule_id)
    counterexamples: list[Counterexample] = []
    count = 0
    for lhs in instances:
        rhs = sound_rhs(lhs)
        names = _names_for(lhs, rhs)
        for interp in enumerate_interpretations(names, _SIG, max_domain):
            ce = _compare(lhs, rhs, interp, count)
            count += 1
            if ce is not None:
                counterexamples.append(ce)
    return EquivReport(rule_id, count, max_domain, None, tuple(counterexamples), True)


def fixed_instances(rule_id: int) -> tuple[Subst, ...]:
    """Three fixed small instantiations per rule for the exhaustive check."""
    A, B = Name("A"), Name("B")
    n1 = Nominal("N1")
    oa = Nominal(canonical_nominal("a"))
    table: dict[int, tuple[Subst, ...]] = {
        1: (
            Subst(BOT, ConceptAdd("A", "a")),
            Subst(BOT, RoleDel("R", "a", "b")),
            Subst(BOT, EPSILON),
        ),
        2: (
            Subst(n1, ConceptDel("A", "a")),
            Subst(oa, RoleAdd("R", "a", "b")),
            Subst(Nominal("N2"), EPSILON),
        ),
        3: (
            Subst(A, RoleAdd("R", "a", "b")),
            Subst(A, RoleDel("S", "b", "c")),
            Subst(B, RoleDel("R", "a", "a")),
        ),
        4: (
            Subst(A, ConceptAdd("B", "a")),
            Subst(B, ConceptDel("A", "b")),
            Subst(A, ConceptDel("B", "c")),
        ),
        5: (
            Subst(A, ConceptAdd("A", "a")),
            Subst(B, ConceptAdd("B", "b")),
            Subst(A, ConceptAdd("A", "c")),
        ),
        6: (
            Subst(A, ConceptDel("A", "a")),
            Subst(B, ConceptDel("B", "b")),
            Subst(A, ConceptDel("A", "c")),
        ),
        7: (
            Subst(Not(A), ConceptAdd("A", "a")),
            Subst(Not(n1), ConceptDel("A", "a")),
            Subst(Not(And(A, B)), RoleAdd("R", "a", "b")),
        ),
        8: (
            Subst(Or(A, B), ConceptAdd("A", "a")),
            Subst(Or(A, oa), RoleDel("R", "a", "b")),
            Subst(Or(n1, B), ConceptDel("B", "b")),
        ),
        9: (
            Subst(And(A, B), ConceptAdd("A", "a")),
            Subst(And(A, oa), RoleDel("R", "a", "b")),
            Subst(And(n1, B), ConceptDel("B", "b")),
        ),
        22: (
            Subst(LessThan(3, Role("S"), A), RoleAdd("S", "a", "b")),
            Subst(AtLeast(1, Role("S"), A), RoleAdd("S", "a", "b")),
            Subst(LessThan(1, Role("S"), B), RoleAdd("S", "a", "b")),
        ),
    }
    if rule_id not in table:
        raise ValueError(f"no fixed instantiations for rule {rule_id}")
    return table[rule_id]


# ---------------------------------------------------------------------------
# Deliberately unsound right-hand sides


def literal_rule_27_rhs(lhs: Subst) -> Concept:
    """Rule 27 exactly as its statement prints it: the inverse marker is
    dropped on the right-hand side."""
    body = lhs.body
    return Exists(Role(body.role.name), Subst(body.body, lhs.sub))


def literal_rule_29_rhs(lhs: Subst) -> Concept:
    """Rule 29 as printed, likewise dropping the inverse."""
    body = lhs.body
    return Exists(Role(body.role.name), Subst(body.body, lhs.sub))


def _mutant_rule5(lhs: Subst) -> Concept:
    return And(lhs.body, Nominal(canonical_nominal(lhs.sub.individual)))


def _mutant_rule6(lhs: Subst) -> Concept:
    return Or(lhs.body, Not(Nominal(canonical_nominal(lhs.sub.individual))))


def _mutant_rule14(lhs: Subst) -> Concept:
    oi = Nominal(canonical_nominal(lhs.sub.source))
    oj = Nominal(canonical_nominal(lhs.sub.target))
    return And(Or(oi, oj), lhs.body)


def _mutant_rule22(lhs: Subst) -> Concept:
    # Swapped individuals: the pivot tests o_j where it should test o_i.
    return _counting_same_role_rhs(lhs.body, lhs.sub, swap=True)


def _mutant_rule30(lhs: Subst) -> Concept:
    return _exists_same_role_rhs(lhs.body, lhs.sub, swap=True)


def _mutant_rule40(lhs: Subst) -> Concept:
    # Drops the allowance for the deleted target.
    role = lhs.body.role
    inner = Subst(lhs.body.body, lhs.sub)
    opivot = Nominal(canonical_nominal(lhs.sub.source))
    return And(
        Or(Not(opivot), Forall(role, inner)),
        Or(opivot, Forall(role, inner)),
    )


#: name -> (rule the mutant perturbs, builder producing the wrong RHS)
MUTANTS: dict[str, tuple[int, Callable[[Subst], Concept]]] = {
    "rule5-and-for-or": (5, _mutant_rule5),
    "rule6-or-for-and": (6, _mutant_rule6),
    "rule14-connectives-swapped": (14, _mutant_rule14),
    "rule22-individuals-swapped": (22, _mutant_rule22),
    "rule30-individuals-swapped": (30, _mutant_rule30),
    "rule40-deleted-target-dropped": (40, _mutant_rule40),
}
