import random

import pytest

from sroiqsigma.equiv import (
    MUTANTS,
    equiv_check,
    equiv_check_exhaustive,
    fixed_instances,
    instantiate_rule,
    literal_rule_27_rhs,
    literal_rule_29_rhs,
    sound_rhs,
)
from sroiqsigma.rewrite import match_rule

ALL_RULES = list(range(0, 42))


@pytest.mark.parametrize("rule_id", ALL_RULES)
def test_rule_has_no_counterexamples_smoke(rule_id):
    report = equiv_check(rule_id, trials=60, max_domain=4, seed=11)
    assert report.ok, report.counterexamples[0].describe()


@pytest.mark.parametrize("rule_id", ALL_RULES)
def test_instantiations_dispatch_to_their_rule(rule_id):
    rng = random.Random(13)
    for _ in range(20):
        lhs = instantiate_rule(rule_id, rng)
        matched = match_rule(lhs)
        assert matched is not None and matched[0] == rule_id


def test_exhaustive_small_rules():
    for rule_id in (1, 5):
        report = equiv_check_exhaustive(rule_id, max_domain=2)
        assert report.ok and report.trials > 0


def test_exhaustive_requires_known_instances():
    with pytest.raises(ValueError):
        fixed_instances(30)


def test_literal_rule_27_is_unsound():
    report = equiv_check(
        27, trials=300, max_domain=5, seed=7, rhs_builder=literal_rule_27_rhs, stop_at_first=True
    )
    assert not report.ok


def test_literal_rule_29_is_unsound():
    report = equiv_check(
        29, trials=300, max_domain=5, seed=7, rhs_builder=literal_rule_29_rhs, stop_at_first=True
    )
    assert not report.ok


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_mutants_are_caught(name):
    rule_id, builder = MUTANTS[name]
    report = equiv_check(
        rule_id, trials=300, max_domain=5, seed=7, rhs_builder=builder, stop_at_first=True
    )
    assert not report.ok, f"mutant {name} was not detected"


def test_counterexample_description_mentions_both_sides():
    rule_id, builder = MUTANTS["rule5-and-for-or"]
    report = equiv_check(rule_id, trials=300, max_domain=5, seed=7, rhs_builder=builder)
    ce = report.counterexamples[0]
    text = ce.describe()
    assert "evaluates to" in text and "trial" in text


def test_reports_are_deterministic_for_a_seed():
    first = equiv_check(22, trials=50, max_domain=4, seed=3)
    second = equiv_check(22, trials=50, max_domain=4, seed=3)
    assert first == second


def test_sound_rhs_matches_match_rule():
    rng = random.Random(17)
    lhs = instantiate_rule(22, rng)
    assert sound_rhs(lhs) == match_rule(lhs)[1]
