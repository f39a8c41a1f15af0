import pathlib

import pytest

from sroiqsigma.parser import load_signature, parse_concept
from sroiqsigma.semantics import load_interpretation

DATA = pathlib.Path(__file__).parent / "data"

#: The running family concept: Alice with a brother Bob whose sisters'
#: siblings are male, or anyone with few parents owning an animal who is a
#: member of her own family.
FAMILY_CONCEPT = (
    "({Alice} & exists Brother.{Bob} & forall Sister-.Male)"
    " | ((<3 Parent top) & (>=1 Owner- Animal) & self FamilyMember)"
)


@pytest.fixture(scope="session")
def family():
    sig, rbox = load_signature(str(DATA / "family.sig"))
    return sig, rbox


@pytest.fixture(scope="session")
def family_concept(family):
    sig, _ = family
    return parse_concept(FAMILY_CONCEPT, sig)


@pytest.fixture(scope="session")
def fig1(family):
    """The 3-element model as drawn: no FamilyMember edges."""
    sig, _ = family
    return load_interpretation(str(DATA / "fig1.json"), sig)


@pytest.fixture(scope="session")
def fig1_model(family):
    """The drawn model plus the FamilyMember edge the hierarchy forces."""
    sig, _ = family
    return load_interpretation(str(DATA / "fig1_model.json"), sig)


@pytest.fixture()
def data_dir():
    return DATA
