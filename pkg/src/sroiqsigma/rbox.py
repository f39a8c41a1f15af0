"""Static role-box analysis: regularity of the hierarchy, the simple-role
fixpoint, and simplicity of the assertion set.

The order on roles is user-supplied on role names; the inverse-closure rule
``S ≺ R ⇔ S⁻ ≺ R`` makes storing it on names sufficient. Supplied pairs are
transitively closed here before the irreflexivity check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import OrderError
from .syntax import RBox, Role, RoleAxiom, Signature, UNIVERSAL_NAME

#: Grammar shapes a ≺-regular inclusion axiom may take.
FORMS = ("RR", "Rinv", "R-prefix", "R-suffix", "chain", "none")


@dataclass(frozen=True)
class AxiomClassification:
    axiom: RoleAxiom
    matched_form: str
    violated_order_constraints: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return self.matched_form != "none" and not self.violated_order_constraints


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    per_axiom: tuple[AxiomClassification, ...]


def transitive_closure(pairs: frozenset[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(tuple(closure), repeat=2):
            if b == c and (a, d) not in closure:
                closure.add((a, d))
                changed = True
    return frozenset(closure)


def closed_order(rbox: RBox) -> frozenset[tuple[str, str]]:
    """Transitive closure of the supplied pairs; raises unless it is a strict
    partial order (irreflexive)."""
    for s, r in rbox.order:
        if UNIVERSAL_NAME in (s, r):
            raise OrderError("the universal role cannot be ordered")
    closure = transitive_closure(rbox.order)
    reflexive = sorted(a for a, b in closure if a == b)
    if reflexive:
        raise OrderError(
            "order is not a strict partial order; reflexive at " + ", ".join(reflexive)
        )
    return closure


def _classify(axiom: RoleAxiom, order: frozenset[tuple[str, str]]) -> AxiomClassification:
    word, rhs = axiom.word, axiom.rhs
    rhs_role = Role(rhs)

    def constraint_violations(parts: tuple[Role, ...]) -> tuple[tuple[str, str], ...]:
        # S ≺ R is read on names, which realizes the inverse-closure rule.
        seen: list[tuple[str, str]] = []
        for role in parts:
            pair = (role.name, rhs)
            if pair not in order and pair not in seen:
                seen.append(pair)
        return tuple(seen)

    candidates: list[tuple[str, tuple[tuple[str, str], ...]]] = []
    if len(word) == 2 and word[0] == rhs_role and word[1] == rhs_role:
        candidates.append(("RR", ()))
    if len(word) == 1 and word[0] == Role(rhs, inverse=True):
        candidates.append(("Rinv", ()))
    if len(word) >= 2 and word[0] == rhs_role:
        candidates.append(("R-prefix", constraint_violations(word[1:])))
    if len(word) >= 2 and word[-1] == rhs_role:
        candidates.append(("R-suffix", constraint_violations(word[:-1])))
    candidates.append(("chain", constraint_violations(word)))

    for form, violations in candidates:
        if not violations:
            return AxiomClassification(axiom, form, ())
    form, violations = candidates[0]
    return AxiomClassification(axiom, form, violations)


def check_regular(rbox: RBox) -> RegularityReport:
    """Classify every inclusion axiom against the ≺-regular grammar under the
    (closed) user order."""
    order = closed_order(rbox)
    per_axiom = tuple(_classify(axiom, order) for axiom in rbox.hierarchy)
    return RegularityReport(all(c.ok for c in per_axiom), per_axiom)


def simple_roles(rbox: RBox, sig: Signature) -> frozenset[Role]:
    """Least fixpoint of the simple-role rules, closed under inverses.

    A role name is simple when no axiom targets it, or when every axiom
    targeting it has a one-role word whose role is already simple. The
    universal role is never simple.
    """
    targeted: dict[str, list[RoleAxiom]] = {}
    for axiom in rbox.hierarchy:
        targeted.setdefault(axiom.rhs, []).append(axiom)
    names = (sig.role_names | rbox.role_names()) - {UNIVERSAL_NAME}
    simple: set[str] = {name for name in names if name not in targeted}
    changed = True
    while changed:
        changed = False
        for name in names - simple:
            axioms = targeted.get(name, [])
            if all(len(a.word) == 1 and a.word[0].name in simple for a in axioms):
                simple.add(name)
                changed = True
    return frozenset(
        role for name in simple for role in (Role(name), Role(name, inverse=True))
    )


def check_simple_assertions(rbox: RBox, simple: frozenset[Role]) -> list[str]:
    """One violation per assertion mentioning a non-simple role."""
    violations: list[str] = []
    for assertion in rbox.assertions:
        bad = [str(r) for r in assertion.roles() if r not in simple]
        if bad:
            violations.append(
                f"assertion {assertion} uses non-simple role{'s' if len(bad) > 1 else ''} "
                + ", ".join(bad)
            )
    return violations


def find_regular_order(rbox: RBox) -> Optional[frozenset[tuple[str, str]]]:
    """Search for an order making every axiom ≺-regular.

    Exhaustive over the per-axiom form choices (each choice contributes its
    order constraints); exponential in the number of axioms, intended for
    small role boxes and tests only. Returns a witness order or None.
    """

    def form_constraints(axiom: RoleAxiom) -> list[tuple[tuple[str, str], ...]]:
        word, rhs = axiom.word, axiom.rhs
        rhs_role = Role(rhs)
        options: list[tuple[tuple[str, str], ...]] = []
        if len(word) == 2 and word[0] == rhs_role and word[1] == rhs_role:
            options.append(())
        if len(word) == 1 and word[0] == Role(rhs, inverse=True):
            options.append(())
        if len(word) >= 2 and word[0] == rhs_role:
            options.append(tuple((r.name, rhs) for r in word[1:]))
        if len(word) >= 2 and word[-1] == rhs_role:
            options.append(tuple((r.name, rhs) for r in word[:-1]))
        options.append(tuple((r.name, rhs) for r in word))
        return options

    per_axiom = [form_constraints(a) for a in rbox.hierarchy]
    for choice in itertools.product(*per_axiom):
        required = frozenset(pair for constraints in choice for pair in constraints)
        closure = transitive_closure(required)
        if all(a != b for a, b in closure):
            return closure
    return None
