import itertools

import pytest

from sroiqsigma.errors import OrderError
from sroiqsigma.rbox import (
    check_regular,
    check_simple_assertions,
    closed_order,
    find_regular_order,
    simple_roles,
)
from sroiqsigma.syntax import (
    RBox,
    Role,
    RoleAssertion,
    RoleAxiom,
    Signature,
)


def rbox_of(hierarchy=(), assertions=(), order=()):
    return RBox(tuple(hierarchy), tuple(assertions), frozenset(order))


def axiom(word, rhs):
    return RoleAxiom(tuple(Role(n[:-1], True) if n.endswith("-") else Role(n) for n in word), rhs)


FAMILY_HIERARCHY = (
    axiom(["Brother"], "FamilyMember"),
    axiom(["Father", "Brother"], "Father"),
)
FAMILY_ORDER = (("Brother", "FamilyMember"), ("Brother", "Father"))


def test_family_hierarchy_is_regular():
    report = check_regular(rbox_of(FAMILY_HIERARCHY, order=FAMILY_ORDER))
    assert report.regular
    forms = [c.matched_form for c in report.per_axiom]
    assert forms == ["chain", "R-prefix"]


def test_empty_rbox_is_regular():
    report = check_regular(rbox_of())
    assert report.regular and report.per_axiom == ()


def test_crossing_axioms_not_regular_under_any_order():
    crossing = rbox_of((axiom(["R", "S"], "S"), axiom(["S", "R"], "R")))
    assert find_regular_order(crossing) is None
    # Independent oracle: every strict partial order over {R, S}.
    candidate_pairs = (("R", "S"), ("S", "R"))
    for chosen in itertools.chain.from_iterable(
        itertools.combinations(candidate_pairs, k) for k in range(3)
    ):
        if ("R", "S") in chosen and ("S", "R") in chosen:
            continue  # not irreflexive after closure
        report = check_regular(rbox_of(crossing.hierarchy, order=chosen))
        assert not report.regular


def test_find_regular_order_witness_for_family():
    witness = find_regular_order(rbox_of(FAMILY_HIERARCHY))
    assert witness is not None
    assert check_regular(rbox_of(FAMILY_HIERARCHY, order=witness)).regular


def test_rr_and_inverse_forms():
    transitive_like = rbox_of((axiom(["R", "R"], "R"),))
    report = check_regular(transitive_like)
    assert report.regular and report.per_axiom[0].matched_form == "RR"
    symmetric_like = rbox_of((axiom(["R-"], "R"),))
    report = check_regular(symmetric_like)
    assert report.regular and report.per_axiom[0].matched_form == "Rinv"


def test_suffix_form():
    report = check_regular(rbox_of((axiom(["S", "R"], "R"),), order=(("S", "R"),)))
    assert report.regular and report.per_axiom[0].matched_form == "R-suffix"


def test_violated_constraints_reported():
    report = check_regular(rbox_of((axiom(["S"], "R"),)))
    classification = report.per_axiom[0]
    assert not report.regular
    assert classification.violated_order_constraints == (("S", "R"),)


def test_inverse_closure_is_implicit_on_names():
    # S- ≺ R holds exactly when S ≺ R does.
    report = check_regular(rbox_of((axiom(["S-"], "R"),), order=(("S", "R"),)))
    assert report.regular


def test_order_must_be_strict_partial_order():
    with pytest.raises(OrderError):
        check_regular(rbox_of(order=(("R", "R"),)))
    with pytest.raises(OrderError):
        check_regular(rbox_of(order=(("R", "S"), ("S", "R"))))


def test_closed_order_transitively_closes():
    closure = closed_order(rbox_of(order=(("A", "B"), ("B", "C"))))
    assert ("A", "C") in closure


def test_monotone_in_the_order():
    base = rbox_of(FAMILY_HIERARCHY, order=FAMILY_ORDER)
    assert check_regular(base).regular
    richer = rbox_of(
        FAMILY_HIERARCHY,
        order=FAMILY_ORDER + (("Sister", "FamilyMember"), ("Sister", "Father")),
    )
    assert check_regular(richer).regular


def test_simple_roles_one_step_hierarchy():
    sig = Signature.make(roles=["A", "B"])
    simple = simple_roles(rbox_of((axiom(["A"], "B"),)), sig)
    assert simple == {
        Role("A"),
        Role("A", inverse=True),
        Role("B"),
        Role("B", inverse=True),
    }


def test_simple_roles_composition_target_not_simple():
    sig = Signature.make(roles=["A", "B", "C"])
    simple = simple_roles(rbox_of((axiom(["A", "B"], "C"),)), sig)
    assert Role("C") not in simple and Role("C", inverse=True) not in simple
    assert Role("A") in simple and Role("B") in simple


def test_simple_roles_vacuous_hierarchy():
    sig = Signature.make(roles=["A", "B"])
    simple = simple_roles(rbox_of(), sig)
    assert Role("A") in simple and Role("B") in simple
    assert Role("U") not in simple  # the universal role is never simple


def test_simple_roles_closed_under_inverse():
    sig = Signature.make(roles=["A", "B", "C"])
    simple = simple_roles(rbox_of((axiom(["A", "B"], "C"),)), sig)
    for role in list(simple):
        assert role.inverted() in simple


def test_simple_roles_chained_length_one_axioms():
    sig = Signature.make(roles=["A", "B", "C"])
    simple = simple_roles(rbox_of((axiom(["A"], "B"), axiom(["B"], "C"))), sig)
    assert Role("C") in simple


def test_assertion_simplicity(family):
    sig, rbox = family
    simple = simple_roles(rbox, sig)
    assert check_simple_assertions(rbox, simple) == []
    # Father is the target of a length-2 word, so asserting on it fails.
    violations = check_simple_assertions(
        rbox_of(rbox.hierarchy, (RoleAssertion("Irr", Role("Father")),), rbox.order),
        simple,
    )
    assert len(violations) == 1 and "Father" in violations[0]


def test_assertion_simplicity_empty():
    assert check_simple_assertions(rbox_of(), frozenset()) == []


def test_reports_are_deterministic():
    box = rbox_of(FAMILY_HIERARCHY, order=FAMILY_ORDER)
    assert check_regular(box) == check_regular(box)
