import random

import pytest

from sroiqsigma.errors import (
    ConceptSyntaxError,
    NameCategoryError,
    SignatureError,
    UnknownNameError,
)
from sroiqsigma.gen import default_gen_signature, random_concept, random_substitution
from sroiqsigma.parser import parse_concept, parse_signature
from sroiqsigma.syntax import (
    And,
    AtLeast,
    BOT,
    ConceptAdd,
    Exists,
    LessThan,
    Name,
    Nominal,
    Not,
    Or,
    RBox,
    Role,
    RoleAdd,
    RoleAxiom,
    SelfLoop,
    Signature,
    Subst,
    TOP,
    UNIVERSAL,
    canonical_nominal,
    print_concept,
    well_formed,
)

GEN_SIG = default_gen_signature()


def test_parse_bot_with_substitution(family):
    sig, _ = family
    concept = parse_concept("bot[Female := Female + Alice]", sig)
    assert concept == Subst(BOT, ConceptAdd("Female", "Alice"))


def test_parse_family_conjunction(family):
    sig, _ = family
    concept = parse_concept(
        "(<3 Parent top) & (>=1 Owner- Animal) & self FamilyMember", sig
    )
    assert concept == And(
        And(
            LessThan(3, Role("Parent"), TOP),
            AtLeast(1, Role("Owner", inverse=True), Name("Animal")),
        ),
        SelfLoop(Role("FamilyMember")),
    )


def test_parse_unclosed_brace_reports_brace_offset(family):
    sig, _ = family
    text = "exists Sister.{Bob"
    with pytest.raises(ConceptSyntaxError) as err:
        parse_concept(text, sig)
    assert err.value.position == text.index("{")


def test_parse_rejects_universal_substitution(family):
    sig, _ = family
    with pytest.raises(NameCategoryError):
        parse_concept("bot[U := U + (Alice, Alice)]", sig)


def test_parse_rejects_universal_inverse(family):
    sig, _ = family
    with pytest.raises(ConceptSyntaxError):
        parse_concept("exists U-.top", sig)


def test_parse_rejects_mismatched_substitution_name(family):
    sig, _ = family
    with pytest.raises(ConceptSyntaxError):
        parse_concept("bot[Female := Male + Alice]", sig)


def test_parse_nominal_used_as_concept(family):
    sig, _ = family
    with pytest.raises(NameCategoryError):
        parse_concept("exists Sister.Bob", sig)


def test_parse_unknown_name(family):
    sig, _ = family
    with pytest.raises(UnknownNameError):
        parse_concept("exists Sister.Unicorn", sig)


def test_parse_precedence_not_binds_tightest(family):
    sig, _ = family
    concept = parse_concept("!Female & Male | Animal", sig)
    assert concept == Or(And(Not(Name("Female")), Name("Male")), Name("Animal"))


def test_parse_postfix_binds_tighter_than_binary(family):
    sig, _ = family
    concept = parse_concept("Female[Female := Female + Alice] & Male", sig)
    assert concept == And(Subst(Name("Female"), ConceptAdd("Female", "Alice")), Name("Male"))


def test_parse_no_resolve_allows_unknown_names():
    concept = parse_concept("exists Anything.{Whatever}[Thing := Thing - x]")
    assert isinstance(concept, Exists)


def test_print_examples():
    assert print_concept(BOT) == "bot"
    assert print_concept(TOP) == "top"
    assert (
        print_concept(Subst(Name("A"), ConceptAdd("A", "a"))) == "A[A := A + a]"
    )
    assert print_concept(Or(Name("A"), Nominal("o_a"))) == "(A | {o_a})"
    assert (
        print_concept(Subst(Exists(Role("R"), Name("A")), RoleAdd("R", "a", "b")))
        == "(exists R.A)[R := R + (a, b)]"
    )


def test_print_parse_round_trip_random_terms():
    rng = random.Random(19)
    for _ in range(300):
        concept = random_concept(rng, GEN_SIG, depth=10, subst_budget=3)
        assert parse_concept(print_concept(concept), GEN_SIG) == concept


def test_role_constructor_rejects_universal_inverse():
    with pytest.raises(ValueError):
        Role("U", inverse=True)
    with pytest.raises(ValueError):
        UNIVERSAL.inverted()


def test_self_loop_rejects_universal():
    with pytest.raises(ValueError):
        SelfLoop(UNIVERSAL)


def test_role_axiom_rejects_universal():
    with pytest.raises(ValueError):
        RoleAxiom((UNIVERSAL,), "R")
    with pytest.raises(ValueError):
        RoleAxiom((Role("R"),), "U")


def test_signature_disjointness():
    with pytest.raises(SignatureError):
        Signature.make(concepts=["X"], nominals=["X"])


def test_signature_rejects_reserved_words():
    with pytest.raises(SignatureError):
        Signature.make(concepts=["bot"])
    with pytest.raises(SignatureError):
        Signature.make(individuals=["U"])


def test_signature_auto_adds_canonical_nominals():
    sig = Signature.make(individuals=["i", "j"])
    assert canonical_nominal("i") in sig.nominal_names
    assert "U" in sig.role_names


def test_well_formed_simple_counting_role(family):
    sig, rbox = family
    concept = AtLeast(1, Role("FamilyMember"), TOP)
    assert well_formed(concept, sig, rbox) == []


def test_well_formed_flags_universal_substitution(family):
    sig, rbox = family
    concept = Subst(BOT, RoleAdd("U", "Alice", "Alice"))
    violations = well_formed(concept, sig, rbox)
    assert violations == ["substitution targets the universal role"]


def test_well_formed_flags_unknown_name(family):
    sig, rbox = family
    violations = well_formed(Name("Unicorn"), sig, rbox)
    assert len(violations) == 1 and "Unicorn" in violations[0]


def test_well_formed_flags_non_simple_counting_role():
    sig = Signature.make(roles=["A", "B", "C"])
    rbox = RBox(hierarchy=(RoleAxiom((Role("A"), Role("B")), "C"),))
    violations = well_formed(AtLeast(1, Role("C"), TOP), sig, rbox)
    assert any("non-simple" in v for v in violations)


def test_well_formed_is_pure(family):
    sig, rbox = family
    concept = Subst(Name("Unicorn"), RoleAdd("U", "Alice", "Alice"))
    first = well_formed(concept, sig, rbox)
    second = well_formed(concept, sig, rbox)
    assert first == second


def test_signature_file_round_trip(family):
    sig, rbox = family
    assert "Female" in sig.concept_names
    assert "Alice" in sig.nominal_names and "o_Alice" in sig.nominal_names
    assert "Alice" in sig.individual_names
    assert len(rbox.hierarchy) == 2
    assert len(rbox.assertions) == 1
    assert ("Brother", "FamilyMember") in rbox.order


def test_signature_file_unknown_section():
    with pytest.raises(Exception) as err:
        parse_signature("concept: A\n")
    assert "unknown section" in str(err.value)


def test_substitution_generator_round_trips():
    rng = random.Random(5)
    for _ in range(100):
        sub = random_substitution(rng, GEN_SIG)
        concept = Subst(BOT, sub)
        assert parse_concept(print_concept(concept), GEN_SIG) == concept
