"""Substitution elimination: the 41-rule translation system with a
deterministic innermost-leftmost strategy and the termination measure pair.

Rules only fire on substitution nodes whose immediate body is not itself a
substitution, so stacked substitutions reduce inside out. Every step records
the measure pair of the rewritten subterm before and after; the pair
decreases strictly in lexicographic order (the per-rule decrease), and the
whole-term primary measure never increases.

Rule numbering follows the source system 1..41; rule 0 is this
implementation's epsilon elimination ``C eps ~> C`` for the head
constructors whose numbered rules only cover proper substitutions (names,
self restrictions, counting and the two quantifiers). Epsilon is exact:
applying the empty substitution never changes a valuation.

Two inverse-role rules are implemented as their semantic proofs derive them,
keeping the inverse on the right-hand side (the printed rule statements drop
it, which the differential harness shows to be unsound): see rules 27/29 in
:func:`_match_quantifier`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import RewriteInternalError, StepLimitError
from .syntax import (
    And,
    AtLeast,
    BOT,
    Bot,
    Concept,
    ConceptAdd,
    ConceptDel,
    Exists,
    Forall,
    LessThan,
    Name,
    Nominal,
    Not,
    Or,
    Role,
    RoleAdd,
    RoleDel,
    SelfLoop,
    Subst,
    Substitution,
    TOP,
    UNIVERSAL,
    canonical_nominal,
    concept_children,
    implies,
    replace_at,
)


class MeasurePair(NamedTuple):
    """Lexicographic termination measure; tuple order is the comparison."""

    m: int
    mp: int


def measure_m(c: Concept) -> int:
    """Primary measure: substitution and quantifier depth.

    Leaves and self restrictions weigh 0, negation is transparent, the binary
    connectives take the max of their sides, counting and the quantifiers add
    one, and a substitution node adds one on top of its body.
    """
    if isinstance(c, (Bot, Name, Nominal, SelfLoop)):
        return 0
    if isinstance(c, Not):
        return measure_m(c.body)
    if isinstance(c, (And, Or)):
        return max(measure_m(c.left), measure_m(c.right))
    if isinstance(c, (AtLeast, LessThan, Exists, Forall)):
        return measure_m(c.body) + 1
    if isinstance(c, Subst):
        return measure_m(c.body) + 1
    raise TypeError(f"not a concept: {c!r}")


def measure_mp(c: Concept) -> int:
    """Secondary measure: pending substitution work.

    Substitution-free constructors are transparent (0 at the leaves); a
    substitution node is measured by its body's head, counting the
    propagation steps the substitution still has to perform. A substitution
    over a substitution contributes nothing beyond the inner one: the outer
    cannot move until the inner is gone.
    """
    if isinstance(c, (Bot, Name, Nominal, SelfLoop)):
        return 0
    if isinstance(c, Not):
        return measure_mp(c.body)
    if isinstance(c, (And, Or)):
        return max(measure_mp(c.left), measure_mp(c.right))
    if isinstance(c, (AtLeast, LessThan, Exists, Forall)):
        return measure_mp(c.body)
    if isinstance(c, Subst):
        body, sub = c.body, c.sub
        if isinstance(body, (Bot, Name, Nominal, SelfLoop)):
            return 0
        if isinstance(body, Not):
            return measure_mp(Subst(body.body, sub)) + 1
        if isinstance(body, (And, Or)):
            return (
                max(measure_mp(Subst(body.left, sub)), measure_mp(Subst(body.right, sub))) + 1
            )
        if isinstance(body, (AtLeast, LessThan, Exists, Forall)):
            return measure_mp(Subst(body.body, sub)) + 1
        if isinstance(body, Subst):
            return measure_mp(body)
        raise TypeError(f"not a concept: {body!r}")
    raise TypeError(f"not a concept: {c!r}")


def measure_pair(c: Concept) -> MeasurePair:
    return MeasurePair(measure_m(c), measure_mp(c))


# ---------------------------------------------------------------------------
# Rule right-hand sides


def _nom(individual: str) -> Nominal:
    return Nominal(canonical_nominal(individual))


def make_at_least(bound: int, role: Role, body: Concept) -> Concept:
    """Counting constructor for rule output; bounds at or below zero clamp to
    top (every element has at least zero matching successors)."""
    if bound <= 0:
        return TOP
    return AtLeast(bound, role, body)


def make_less_than(bound: int, role: Role, body: Concept) -> Concept:
    """As :func:`make_at_least`; a cardinality is never below zero, so the
    clamp is bottom."""
    if bound <= 0:
        return BOT
    return LessThan(bound, role, body)


def _self_same_role_rhs(body: SelfLoop, sub: Substitution) -> Concept:
    oi, oj = _nom(sub.source), _nom(sub.target)
    if isinstance(sub, RoleAdd):
        return Or(And(oi, oj), body)
    return And(Or(Not(oi), Not(oj)), body)


def _counting_same_role_rhs(body: Concept, sub: Substitution, swap: bool) -> Concept:
    """Rules 22/24 and, with the pivots swapped for an inverse role, 23/25."""
    make = make_at_least if isinstance(body, AtLeast) else make_less_than
    role, bound = body.role, body.bound
    inner = Subst(body.body, sub)
    pivot, other = (sub.source, sub.target) if not swap else (sub.target, sub.source)
    opivot, oother = _nom(pivot), _nom(other)
    witness = Exists(UNIVERSAL, And(oother, inner))
    adding = isinstance(sub, RoleAdd)
    if adding:
        guard_changed = And(And(opivot, witness), Forall(role, Not(oother)))
        changed = make(bound - 1, role, inner)
        guard_unchanged = Or(
            Or(Not(opivot), Forall(UNIVERSAL, Or(Not(oother), Not(inner)))),
            Exists(role, oother),
        )
    else:
        guard_changed = And(And(opivot, witness), Exists(role, oother))
        changed = make(bound + 1, role, inner)
        guard_unchanged = Or(
            Or(Not(opivot), Forall(UNIVERSAL, Or(Not(oother), Not(inner)))),
            Forall(role, Not(oother)),
        )
    unchanged = make(bound, role, inner)
    return And(implies(guard_changed, changed), implies(guard_unchanged, unchanged))


def _exists_same_role_rhs(body: Exists, sub: Substitution, swap: bool) -> Concept:
    """Rules 30/32 and, with swapped pivots, 31/33."""
    role = body.role
    inner = Subst(body.body, sub)
    pivot, other = (sub.source, sub.target) if not swap else (sub.target, sub.source)
    opivot, oother = _nom(pivot), _nom(other)
    if isinstance(sub, RoleAdd):
        at_pivot = implies(
            opivot, Or(Exists(UNIVERSAL, And(oother, inner)), Exists(role, inner))
        )
    else:
        at_pivot = implies(opivot, Exists(role, And(inner, Not(oother))))
    elsewhere = implies(Not(opivot), Exists(role, inner))
    return And(at_pivot, elsewhere)


def _forall_same_role_rhs(body: Forall, sub: Substitution, swap: bool) -> Concept:
    """Rules 38/40 and, with swapped pivots, 39/41."""
    role = body.role
    inner = Subst(body.body, sub)
    pivot, other = (sub.source, sub.target) if not swap else (sub.target, sub.source)
    opivot, oother = _nom(pivot), _nom(other)
    if isinstance(sub, RoleAdd):
        at_pivot = implies(
            opivot, And(Forall(role, inner), Exists(UNIVERSAL, And(oother, inner)))
        )
    else:
        at_pivot = implies(opivot, Forall(role, Or(inner, oother)))
    elsewhere = implies(Not(opivot), Forall(role, inner))
    return And(at_pivot, elsewhere)


# ---------------------------------------------------------------------------
# Rule dispatch


def _match_name(body: Name, sub: Substitution) -> tuple[int, Concept]:
    if isinstance(sub, (RoleAdd, RoleDel)):
        return 3, body
    if isinstance(sub, (ConceptAdd, ConceptDel)):
        if sub.concept != body.name:
            return 4, body
        if isinstance(sub, ConceptAdd):
            return 5, Or(body, _nom(sub.individual))
        return 6, And(body, Not(_nom(sub.individual)))
    return 0, body  # epsilon


def _match_self(body: SelfLoop, sub: Substitution) -> tuple[int, Concept]:
    inverse = body.role.inverse
    if isinstance(sub, (ConceptAdd, ConceptDel)):
        return (11 if inverse else 10), body
    if isinstance(sub, (RoleAdd, RoleDel)):
        if sub.role != body.role.name:
            return (13 if inverse else 12), body
        rhs = _self_same_role_rhs(body, sub)
        if isinstance(sub, RoleAdd):
            return (17 if inverse else 14), rhs
        return (16 if inverse else 15), rhs
    return 0, body  # epsilon


def _match_counting(body: Concept, sub: Substitution) -> tuple[int, Concept]:
    inverse = body.role.inverse
    rebuild = AtLeast if isinstance(body, AtLeast) else LessThan
    if isinstance(sub, (ConceptAdd, ConceptDel)):
        rhs = rebuild(body.bound, body.role, Subst(body.body, sub))
        return (19 if inverse else 18), rhs
    if isinstance(sub, (RoleAdd, RoleDel)):
        if sub.role != body.role.name:
            rhs = rebuild(body.bound, body.role, Subst(body.body, sub))
            return (21 if inverse else 20), rhs
        rhs = _counting_same_role_rhs(body, sub, swap=inverse)
        if isinstance(sub, RoleAdd):
            return (23 if inverse else 22), rhs
        return (25 if inverse else 24), rhs
    return 0, body  # epsilon


def _match_quantifier(body: Concept, sub: Substitution) -> tuple[int, Concept]:
    existential = isinstance(body, Exists)
    rebuild = Exists if existential else Forall
    inverse = body.role.inverse
    if isinstance(sub, (ConceptAdd, ConceptDel)):
        # Rules 27/35 (and 29/37 below) keep the inverse on the right-hand
        # side; the substitution leaves every role valuation untouched.
        rhs = rebuild(body.role, Subst(body.body, sub))
        if existential:
            return (27 if inverse else 26), rhs
        return (35 if inverse else 34), rhs
    if isinstance(sub, (RoleAdd, RoleDel)):
        if sub.role != body.role.name:
            rhs = rebuild(body.role, Subst(body.body, sub))
            if existential:
                return (29 if inverse else 28), rhs
            return (37 if inverse else 36), rhs
        if existential:
            rhs = _exists_same_role_rhs(body, sub, swap=inverse)
            if isinstance(sub, RoleAdd):
                return (31 if inverse else 30), rhs
            return (33 if inverse else 32), rhs
        rhs = _forall_same_role_rhs(body, sub, swap=inverse)
        if isinstance(sub, RoleAdd):
            return (39 if inverse else 38), rhs
        return (41 if inverse else 40), rhs
    return 0, body  # epsilon


def match_rule(redex: Subst) -> Optional[tuple[int, Concept]]:
    """The rule a substitution node fires, with its instantiated right-hand
    side; None when the body is itself a substitution (reduce inside first).
    """
    body, sub = redex.body, redex.sub
    if isinstance(body, Subst):
        return None
    if isinstance(body, Bot):
        return 1, BOT
    if isinstance(body, Nominal):
        return 2, body
    if isinstance(body, Name):
        return _match_name(body, sub)
    if isinstance(body, Not):
        return 7, Not(Subst(body.body, sub))
    if isinstance(body, Or):
        return 8, Or(Subst(body.left, sub), Subst(body.right, sub))
    if isinstance(body, And):
        return 9, And(Subst(body.left, sub), Subst(body.right, sub))
    if isinstance(body, SelfLoop):
        return _match_self(body, sub)
    if isinstance(body, (AtLeast, LessThan)):
        return _match_counting(body, sub)
    if isinstance(body, (Exists, Forall)):
        return _match_quantifier(body, sub)
    raise RewriteInternalError(f"no rule covers substitution over {type(body).__name__}")


@dataclass(frozen=True)
class RewriteStep:
    """One contraction. ``before``/``after`` are the whole terms; the measure
    pair is taken on the rewritten subterm and its replacement, which is
    where the strict lexicographic decrease holds."""

    rule_id: int
    redex_path: tuple[int, ...]
    before: Concept
    after: Concept
    measure_before: MeasurePair
    measure_after: MeasurePair


def _find_redex(c: Concept, path: tuple[int, ...]) -> Optional[tuple[tuple[int, ...], Subst]]:
    """Innermost-leftmost redex: the first substitution node in post-order
    whose body is not itself a substitution."""
    for index, child in enumerate(concept_children(c)):
        found = _find_redex(child, path + (index,))
        if found is not None:
            return found
    if isinstance(c, Subst) and not isinstance(c.body, Subst):
        return path, c
    return None


def rewrite_step(c: Concept) -> Optional[RewriteStep]:
    """Contract the innermost-leftmost redex; None iff ``c`` is
    substitution-free."""
    found = _find_redex(c, ())
    if found is None:
        return None
    path, redex = found
    matched = match_rule(redex)
    if matched is None:
        raise RewriteInternalError("innermost redex has a substitution body")
    rule_id, contractum = matched
    return RewriteStep(
        rule_id=rule_id,
        redex_path=path,
        before=c,
        after=replace_at(c, path, contractum),
        measure_before=measure_pair(redex),
        measure_after=measure_pair(contractum),
    )


DEFAULT_STEP_LIMIT = 10**6


def normalize(
    c: Concept, audit: bool = False, step_limit: int = DEFAULT_STEP_LIMIT
) -> tuple[Concept, list[RewriteStep]]:
    """Rewrite to normal form; the result is substitution-free.

    With ``audit``, every step is checked for the strict lexicographic
    decrease of the redex measure pair and for monotonicity of the whole-term
    primary measure; a violation aborts with a diagnostic since it would
    disprove termination.
    """
    steps: list[RewriteStep] = []
    current = c
    whole_m = measure_m(c) if audit else 0
    while True:
        step = rewrite_step(current)
        if step is None:
            return current, steps
        if len(steps) >= step_limit:
            raise StepLimitError(
                f"no normal form within {step_limit} steps; the system should terminate"
            )
        if audit:
            if not step.measure_after < step.measure_before:
                raise RewriteInternalError(
                    f"rule {step.rule_id} did not decrease the measure pair:"
                    f" {step.measure_before} -> {step.measure_after}"
                )
            new_whole_m = measure_m(step.after)
            if new_whole_m > whole_m:
                raise RewriteInternalError(
                    f"rule {step.rule_id} increased the whole-term measure:"
                    f" {whole_m} -> {new_whole_m}"
                )
            whole_m = new_whole_m
        steps.append(step)
        current = step.after
