import json

import pytest

from sroiqsigma.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["--version"])
    assert exit_info.value.code == 0
    assert "sroiqsigma" in capsys.readouterr().out


def test_parse_echoes_canonical_form(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "parse",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "( exists   Sister . Female )[ Female := Female + Alice ]",
    )
    assert code == 0
    assert out.strip() == "(exists Sister.Female)[Female := Female + Alice]"


def test_parse_no_resolve(capsys):
    code, out, _ = run(capsys, "parse", "--no-resolve", "--concept", "exists R.{x}")
    assert code == 0 and out.strip() == "exists R.{x}"


def test_parse_unknown_name_exits_2(capsys, data_dir):
    code, _, err = run(
        capsys, "parse", "--sig", str(data_dir / "family.sig"), "--concept", "Unicorn"
    )
    assert code == 2
    assert "error[unknown-name]" in err


def test_parse_syntax_error_exits_2(capsys, data_dir):
    code, _, err = run(
        capsys, "parse", "--sig", str(data_dir / "family.sig"),
        "--concept", "exists Sister.{Bob",
    )
    assert code == 2
    assert "error[syntax-error]" in err and "offset 14" in err


def test_normalize_spec_example(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "normalize",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "(exists Sister.Female)[Female := Female + Alice]",
    )
    assert code == 0
    assert out.splitlines()[0] == "exists Sister.(Female | {o_Alice})"


def test_normalize_trace_json_and_text_agree(capsys, data_dir):
    args = [
        "normalize",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "(exists Sister.Female)[Female := Female + Alice]",
        "--trace",
    ]
    code, text_out, _ = run(capsys, *args)
    assert code == 0
    code, json_out, _ = run(capsys, *args, "--format", "json")
    assert code == 0
    payload = json.loads(json_out)
    assert payload["normal_form"] == "exists Sister.(Female | {o_Alice})"
    assert payload["steps"] == 2
    assert [record["rule_id"] for record in payload["trace"]] == [26, 5]
    # text carries the same fields
    assert "rule 26" in text_out and "rule 5" in text_out
    assert "steps: 2" in text_out
    for record in payload["trace"]:
        assert record["before"] in text_out and record["after"] in text_out


def test_normalize_step_limit_exits_3(capsys, data_dir):
    code, _, err = run(
        capsys,
        "normalize",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "(exists Sister.Female)[Female := Female + Alice]",
        "--step-limit", "1",
    )
    assert code == 3
    assert "error[step-limit]" in err


def test_measure_spec_example(capsys):
    code, out, _ = run(capsys, "measure", "--concept", "bot[Female := Female + Alice]")
    assert code == 0
    assert out.strip() == "M=1 M'=0"


def test_measure_json_parity(capsys):
    code, out, _ = run(
        capsys, "measure", "--concept", "bot[Female := Female + Alice]",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out) == {"m": 1, "mp": 0}


def test_eval_fig1(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "eval",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "exists Brother.{Bob}",
        "--interp", str(data_dir / "fig1.json"),
    )
    assert code == 0
    assert out.strip() == "members: alice"


def test_eval_empty_valuation(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "eval",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "bot",
        "--interp", str(data_dir / "fig1.json"),
    )
    assert code == 0
    assert out.strip() == "members: (empty)"


def test_rbox_check_family(capsys, data_dir):
    code, out, _ = run(capsys, "rbox-check", "--sig", str(data_dir / "family.sig"))
    assert code == 0
    assert "regular: True" in out
    assert "assertions: all simple" in out


def test_rbox_check_json_parity(capsys, data_dir):
    code, out, _ = run(
        capsys, "rbox-check", "--sig", str(data_dir / "family.sig"), "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["regular"] is True
    assert payload["assertion_violations"] == []
    assert {a["axiom"] for a in payload["axioms"]} == {
        "Brother <= FamilyMember",
        "Father Brother <= Father",
    }
    assert "Brother" in payload["simple_roles"]


def test_rbox_check_not_regular_exits_1(capsys, tmp_path):
    sig_file = tmp_path / "crossing.sig"
    sig_file.write_text(
        "roles: R S\nhierarchy:\n  R S <= S\n  S R <= R\n", encoding="utf-8"
    )
    code, out, _ = run(capsys, "rbox-check", "--sig", str(sig_file))
    assert code == 1
    assert "regular: False" in out


def test_equiv_rule_5(capsys):
    code, out, _ = run(
        capsys, "equiv", "--rule", "5", "--trials", "100", "--max-domain", "4",
        "--seed", "7",
    )
    assert code == 0
    assert "0 counterexamples" in out


def test_equiv_requires_seed(capsys):
    code, _, err = run(capsys, "equiv", "--rule", "5")
    assert code == 2
    assert "error[usage]" in err


def test_equiv_exhaustive(capsys):
    code, out, _ = run(capsys, "equiv", "--rule", "1", "--exhaustive", "--max-domain", "2")
    assert code == 0
    assert "0 counterexamples" in out


def test_equiv_exhaustive_without_instances_exits_2(capsys):
    code, _, err = run(capsys, "equiv", "--rule", "30", "--exhaustive", "--max-domain", "2")
    assert code == 2
    assert "error[usage]" in err


def test_sat_family(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "sat",
        "--sig", str(data_dir / "family.sig"),
        "--concept-file", str(data_dir.parent / "data" / "family_concept.txt"),
        "--max-domain", "3",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "SAT"
    assert payload["witness"] is not None and payload["element"]


def test_sat_bot_unknown_exits_1(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "sat",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "bot",
        "--max-domain", "2",
    )
    assert code == 1
    assert "verdict: UNKNOWN" in out


def test_sat_requires_normalized_concept(capsys, data_dir):
    code, _, err = run(
        capsys,
        "sat",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "Female[Female := Female + Alice]",
        "--max-domain", "2",
    )
    assert code == 2
    assert "error[search-precondition]" in err


def test_sat_with_normalize_flag(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "sat",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "Female[Female := Female + Alice]",
        "--max-domain", "2",
        "--normalize",
    )
    assert code == 0
    assert "verdict: SAT" in out and "normalization steps: 1" in out


def test_check_model_accepts_augmented_fig1(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "check-model",
        "--sig", str(data_dir / "family.sig"),
        "--concept-file", str(data_dir / "family_concept.txt"),
        "--interp", str(data_dir / "fig1_model.json"),
    )
    assert code == 0
    assert "alice" in out and "ok: True" in out


def test_check_model_flags_drawn_fig1(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "check-model",
        "--sig", str(data_dir / "family.sig"),
        "--concept-file", str(data_dir / "family_concept.txt"),
        "--interp", str(data_dir / "fig1.json"),
    )
    assert code == 1
    assert "Brother <= FamilyMember: False" in out


def test_check_model_at_individual(capsys, data_dir):
    code, out, _ = run(
        capsys,
        "check-model",
        "--sig", str(data_dir / "family.sig"),
        "--concept-file", str(data_dir / "family_concept.txt"),
        "--interp", str(data_dir / "fig1_model.json"),
        "--at", "Alice",
    )
    assert code == 0
    assert "at Alice: True" in out


def test_bad_interpretation_file_exits_2(capsys, data_dir, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"domain": [], "concepts": {}}', encoding="utf-8")
    code, _, err = run(
        capsys,
        "eval",
        "--sig", str(data_dir / "family.sig"),
        "--concept", "bot",
        "--interp", str(bad),
    )
    assert code == 2
    assert "error[empty-domain]" in err


def test_missing_file_exits_2(capsys, data_dir):
    code, _, err = run(
        capsys, "parse", "--sig", str(data_dir / "nonexistent.sig"), "--concept", "bot"
    )
    assert code == 2
    assert "error[io]" in err
