"""Command-line front end.

Exit codes: 0 for success (property true), 1 for a property that is false
(not regular, UNKNOWN, counterexamples found, model check failed), 2 for
usage, parse or input-file errors, 3 for internal invariant failures. Every
error carries a stable machine-readable code. ``--format json`` and
``--format text`` carry the same information field for field.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional

from . import __version__
from .equiv import equiv_check, equiv_check_exhaustive
from .errors import (
    RewriteInternalError,
    SearchInternalError,
    SroiqError,
    StepLimitError,
    UsageError,
)
from .parser import load_signature, parse_concept
from .rbox import check_regular, check_simple_assertions, simple_roles
from .rewrite import DEFAULT_STEP_LIMIT, measure_pair, normalize
from .search import SatQuery, check_model, sat_bounded
from .semantics import (
    eval_concept,
    interpretation_to_data,
    load_interpretation,
)
from .syntax import contains_subst, print_concept

_INTERNAL_ERRORS = (StepLimitError, RewriteInternalError, SearchInternalError)


def _emit(payload: dict, fmt: str, text_lines: Callable[[dict], list[str]]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines(payload):
            print(line)


def _read_concept(args, sig):
    if args.concept is not None:
        text = args.concept
    else:
        with open(args.concept_file, "r", encoding="utf-8") as handle:
            text = handle.read().strip()
    return parse_concept(text, sig)


def _load_sig(args):
    if args.sig is None:
        raise UsageError("--sig is required for this command")
    return load_signature(args.sig)


# ---------------------------------------------------------------------------
# Commands


def _cmd_parse(args) -> int:
    sig = None
    if not args.no_resolve:
        sig, _ = _load_sig(args)
    concept = _read_concept(args, sig)
    payload = {"concept": print_concept(concept)}
    _emit(payload, args.format, lambda p: [p["concept"]])
    return 0


def _cmd_normalize(args) -> int:
    sig, _ = _load_sig(args)
    concept = _read_concept(args, sig)
    normal, steps = normalize(concept, audit=True, step_limit=args.step_limit)
    payload = {"normal_form": print_concept(normal), "steps": len(steps)}
    if args.trace:
        payload["trace"] = [
            {
                "rule_id": step.rule_id,
                "redex_path": list(step.redex_path),
                "before": print_concept(step.before),
                "after": print_concept(step.after),
                "measure_before": list(step.measure_before),
                "measure_after": list(step.measure_after),
            }
            for step in steps
        ]

    def lines(p: dict) -> list[str]:
        out = []
        for index, record in enumerate(p.get("trace", []), start=1):
            out.append(
                f"step {index}: rule {record['rule_id']}"
                f" at {record['redex_path']}"
                f" measure {tuple(record['measure_before'])}"
                f" -> {tuple(record['measure_after'])}"
            )
            out.append(f"  before: {record['before']}")
            out.append(f"  after:  {record['after']}")
        out.append(p["normal_form"])
        out.append(f"steps: {p['steps']}")
        return out

    _emit(payload, args.format, lines)
    return 0


def _cmd_measure(args) -> int:
    sig = None
    if args.sig is not None:
        sig, _ = _load_sig(args)
    concept = _read_concept(args, sig)
    pair = measure_pair(concept)
    payload = {"m": pair.m, "mp": pair.mp}
    _emit(payload, args.format, lambda p: [f"M={p['m']} M'={p['mp']}"])
    return 0


def _cmd_eval(args) -> int:
    sig, _ = _load_sig(args)
    concept = _read_concept(args, sig)
    interp = load_interpretation(args.interp, sig)
    members = sorted(eval_concept(concept, interp))
    payload = {"members": members}
    _emit(
        payload,
        args.format,
        lambda p: ["members: " + (" ".join(p["members"]) if p["members"] else "(empty)")],
    )
    return 0


def _cmd_rbox_check(args) -> int:
    sig, rbox = _load_sig(args)
    report = check_regular(rbox)
    simple = simple_roles(rbox, sig)
    violations = check_simple_assertions(rbox, simple)
    payload = {
        "regular": report.regular,
        "axioms": [
            {
                "axiom": str(c.axiom),
                "matched_form": c.matched_form,
                "violated_order_constraints": [list(pair) for pair in c.violated_order_constraints],
            }
            for c in report.per_axiom
        ],
        "simple_roles": sorted(str(r) for r in simple),
        "assertion_violations": violations,
    }

    def lines(p: dict) -> list[str]:
        out = [f"regular: {p['regular']}"]
        for entry in p["axioms"]:
            constraint_note = ""
            if entry["violated_order_constraints"]:
                needed = ", ".join(f"{s} < {r}" for s, r in entry["violated_order_constraints"])
                constraint_note = f" (missing order: {needed})"
            out.append(f"  {entry['axiom']}: {entry['matched_form']}{constraint_note}")
        out.append("simple roles: " + " ".join(p["simple_roles"]))
        if p["assertion_violations"]:
            out.extend("violation: " + v for v in p["assertion_violations"])
        else:
            out.append("assertions: all simple")
        return out

    _emit(payload, args.format, lines)
    return 0 if report.regular and not violations else 1


def _cmd_equiv(args) -> int:
    if args.exhaustive:
        try:
            report = equiv_check_exhaustive(args.rule, max_domain=args.max_domain)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        if args.seed is None:
            raise UsageError("--seed is required for randomized equivalence checking")
        report = equiv_check(args.rule, args.trials, args.max_domain, args.seed)
    payload = {
        "rule_id": report.rule_id,
        "trials": report.trials,
        "max_domain": report.max_domain,
        "seed": report.seed,
        "exhaustive": report.exhaustive,
        "counterexamples": [ce.describe() for ce in report.counterexamples],
    }

    def lines(p: dict) -> list[str]:
        out = [
            f"rule {p['rule_id']}: {p['trials']} trials, max domain {p['max_domain']},"
            f" {len(p['counterexamples'])} counterexamples"
        ]
        out.extend("  " + text for text in p["counterexamples"][:5])
        return out

    _emit(payload, args.format, lines)
    return 0 if report.ok else 1


def _cmd_sat(args) -> int:
    sig, rbox = _load_sig(args)
    concept = _read_concept(args, sig)
    normalized_steps = None
    if args.normalize and contains_subst(concept):
        concept, steps = normalize(concept, audit=True)
        normalized_steps = len(steps)
    query = SatQuery(
        concept=concept,
        rbox=rbox,
        sig=sig,
        max_domain=args.max_domain,
        mode=args.mode,
        seed=args.seed,
        trials=args.trials,
        at_individual=args.at,
    )
    result = sat_bounded(query)
    payload = {
        "verdict": result.verdict,
        "element": result.element,
        "witness": interpretation_to_data(result.witness) if result.witness else None,
        "examined": result.stats.examined,
        "normalization_steps": normalized_steps,
    }

    def lines(p: dict) -> list[str]:
        out = [f"verdict: {p['verdict']}"]
        if p["normalization_steps"] is not None:
            out.append(f"normalization steps: {p['normalization_steps']}")
        out.append(f"examined: {p['examined']}")
        if p["verdict"] == "SAT":
            out.append(f"element: {p['element']}")
            out.append("witness: " + json.dumps(p["witness"], sort_keys=True))
        return out

    _emit(payload, args.format, lines)
    return 0 if result.verdict == "SAT" else 1


def _cmd_check_model(args) -> int:
    sig, rbox = _load_sig(args)
    concept = _read_concept(args, sig)
    interp = load_interpretation(args.interp, sig)
    report = check_model(concept, interp, rbox, args.at)
    payload = {
        "members": sorted(report.members),
        "nonempty": report.nonempty,
        "axioms": [
            {"axiom": e.description, "satisfied": e.satisfied}
            for e in report.rbox_report.entries
        ],
        "coherence_violations": list(report.coherence_violations),
        "at_individual": report.at_individual,
        "at_member": report.at_member,
        "ok": report.ok,
    }

    def lines(p: dict) -> list[str]:
        out = [
            "members: " + (" ".join(p["members"]) if p["members"] else "(empty)"),
            f"nonempty: {p['nonempty']}",
        ]
        out.extend(f"  {e['axiom']}: {e['satisfied']}" for e in p["axioms"])
        out.extend("coherence violation: " + v for v in p["coherence_violations"])
        if p["at_individual"] is not None:
            out.append(f"at {p['at_individual']}: {p['at_member']}")
        out.append(f"ok: {p['ok']}")
        return out

    _emit(payload, args.format, lines)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# Argument parsing


def _add_concept_arguments(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--concept", help="concept text")
    group.add_argument("--concept-file", help="file containing concept text")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sroiqsigma",
        description="SROIQ concepts with explicit substitutions: parse, rewrite,"
        " evaluate, analyze and search",
    )
    parser.add_argument("--version", action="version", version=f"sroiqsigma {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, sig: bool = True) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--format", choices=("text", "json"), default="text")
        if sig:
            sub.add_argument("--sig", help="signature/role-box declaration file")
        return sub

    sub = command("parse", "parse a concept and echo its canonical form")
    _add_concept_arguments(sub)
    sub.add_argument("--no-resolve", action="store_true", help="skip name resolution")
    sub.set_defaults(handler=_cmd_parse)

    sub = command("normalize", "rewrite a concept to substitution-free normal form")
    _add_concept_arguments(sub)
    sub.add_argument("--trace", action="store_true", help="print every rewrite step")
    sub.add_argument("--step-limit", type=int, default=DEFAULT_STEP_LIMIT)
    sub.set_defaults(handler=_cmd_normalize)

    sub = command("measure", "print the termination measure pair")
    _add_concept_arguments(sub)
    sub.set_defaults(handler=_cmd_measure)

    sub = command("eval", "evaluate a concept over an interpretation file")
    _add_concept_arguments(sub)
    sub.add_argument("--interp", required=True, help="interpretation file (JSON)")
    sub.set_defaults(handler=_cmd_eval)

    sub = command("rbox-check", "regularity, simple roles and assertion simplicity")
    sub.set_defaults(handler=_cmd_rbox_check)

    sub = command("equiv", "differential test of one translation rule", sig=False)
    sub.add_argument("--rule", type=int, required=True, choices=range(0, 42), metavar="0..41")
    sub.add_argument("--trials", type=int, default=300)
    sub.add_argument("--max-domain", type=int, default=4)
    sub.add_argument("--seed", type=int)
    sub.add_argument(
        "--exhaustive",
        action="store_true",
        help="enumerate every interpretation of fixed instantiations instead",
    )
    sub.set_defaults(handler=_cmd_equiv)

    sub = command("sat", "bounded finite-model satisfiability search")
    _add_concept_arguments(sub)
    sub.add_argument("--max-domain", type=int, required=True)
    sub.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--trials", type=int)
    sub.add_argument("--at", help="check membership at this individual")
    sub.add_argument(
        "--normalize", action="store_true", help="eliminate substitutions before searching"
    )
    sub.set_defaults(handler=_cmd_sat)

    sub = command("check-model", "validate a user-supplied model")
    _add_concept_arguments(sub)
    sub.add_argument("--interp", required=True, help="interpretation file (JSON)")
    sub.add_argument("--at", help="check membership at this individual")
    sub.set_defaults(handler=_cmd_check_model)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _INTERNAL_ERRORS as exc:
        print(f"error[{exc.code}]: {exc.message}", file=sys.stderr)
        return 3
    except SroiqError as exc:
        print(f"error[{exc.code}]: {exc.message}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
