"""Command-line front end.

Exit codes: 0 when the operation's outcome is positive (witness found,
check true, system convergent), 1 when negative (exhausted, false, not
certified), 2 for usage or input errors. Reports are line-oriented
`key: value` pairs, or one JSON object with --format json.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import decision, engine, gpcp, terms
from .core import Srs, check_convergent, classify, critical_pairs, parse_srs
from .errors import BudgetExhaustedError, SrskitError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _print_report(pairs: list[tuple[str, object]], fmt: str):
    if fmt == "json":
        print(json.dumps(dict(pairs)))
    else:
        for key, value in pairs:
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif value is None:
                value = "unknown"
            print(f"{key}: {value}")


def _load_srs(path: str, chars: bool) -> Srs:
    return parse_srs(Path(path).read_text(), chars=chars)


def _parse_cli_string(srs: Srs, text: str, chars: bool):
    if chars and text != "eps":
        return srs.string(" ".join(text.replace(" ", "")))
    return srs.string(text)


def _outcome_pairs(outcome: decision.SearchOutcome, srs: Srs) -> list[tuple[str, object]]:
    pairs: list[tuple[str, object]] = [("status", outcome.status)]
    if outcome.witness is not None:
        if len(outcome.witness) == 1:
            pairs.append(("witness", srs.render(outcome.witness[0])))
        else:
            for i, w in enumerate(outcome.witness, start=1):
                pairs.append((f"witness{i}", srs.render(w)))
    pairs.append(("bound", outcome.bound))
    pairs.append(("examined", outcome.examined))
    return pairs


def cmd_check(args) -> int:
    srs = _load_srs(args.srs, args.chars)
    report = srskit_classify(srs)
    conv = srskit_convergence(srs)
    pairs: list[tuple[str, object]] = [
        ("rules", len(srs.rules)),
        ("monadic", report.monadic),
        ("dwindling", report.dwindling),
        ("length_reducing", report.length_reducing),
        ("inter_reduced", report.inter_reduced),
        ("orthogonal", report.orthogonal),
        ("critical_pairs", len(srskit_critical_pairs(srs))),
        ("terminating", conv.terminating),
        ("locally_confluent", conv.locally_confluent),
        ("convergent", conv.convergent),
    ]
    if conv.unjoinable_pair is not None:
        pairs.append(("unjoinable_peak", srs.render(conv.unjoinable_pair.peak)))
    _print_report(pairs, args.format)
    return EXIT_OK if conv.convergent is True else EXIT_NEGATIVE


def cmd_normalize(args) -> int:
    srs = _load_srs(args.srs, args.chars)
    w = _parse_cli_string(srs, args.string, args.chars)
    if args.trace:
        try:
            nf, steps = engine.rewrite_trace(srs, w, budget=args.budget)
        except BudgetExhaustedError as e:
            _print_report([("status", "budget_exhausted"), ("error", str(e))], args.format)
            return EXIT_NEGATIVE
        pairs: list[tuple[str, object]] = [("input", srs.render(w))]
        for s in steps:
            pairs.append(("step", f"rule {s.rule} at {s.position}: {srs.render(s.output)}"))
        pairs += [("normal_form", srs.render(nf)), ("steps", len(steps))]
        _print_report(pairs, args.format)
        return EXIT_OK
    try:
        nf = engine.normalize(srs, w, budget=args.budget)
    except BudgetExhaustedError as e:
        _print_report([("status", "budget_exhausted"), ("error", str(e))], args.format)
        return EXIT_NEGATIVE
    _print_report([("input", srs.render(w)), ("normal_form", srs.render(nf))], args.format)
    return EXIT_OK


def cmd_irr(args) -> int:
    srs = _load_srs(args.srs, args.chars)
    automaton = engine.irr_automaton(srs)
    text = automaton.to_dot() if args.dot else automaton.to_table()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _run_search(args, runner) -> int:
    srs = _load_srs(args.srs, args.chars)
    outcome = runner(srs)
    _print_report(_outcome_pairs(outcome, srs), args.format)
    return EXIT_OK if outcome.found else EXIT_NEGATIVE


def cmd_ct(args) -> int:
    def run(srs):
        query = decision.CtQuery(
            srs,
            _parse_cli_string(srs, args.alpha, args.chars),
            _parse_cli_string(srs, args.beta, args.chars),
        )
        return decision.ct_search(query, args.max_len, equiv_budget=args.equiv_budget)
    return _run_search(args, run)


def cmd_fp(args) -> int:
    def run(srs):
        alpha = _parse_cli_string(srs, args.alpha, args.chars)
        return decision.fp_search(srs, alpha, args.max_len, equiv_budget=args.equiv_budget)
    return _run_search(args, run)


def cmd_ce(args) -> int:
    def run(srs):
        query = decision.CeQuery(
            srs,
            _parse_cli_string(srs, args.alpha1, args.chars),
            _parse_cli_string(srs, args.alpha2, args.chars),
            _parse_cli_string(srs, args.beta1, args.chars),
            _parse_cli_string(srs, args.beta2, args.chars),
        )
        return decision.ce_search(query, args.max_len, equiv_budget=args.equiv_budget)
    return _run_search(args, run)


def cmd_gpcp_solve(args) -> int:
    inst = gpcp.parse_gpcp(Path(args.instance).read_text())
    sol = gpcp.gpcp_brute_force(inst, args.k_max)
    if sol is None:
        _print_report([("status", "none"), ("k_max", args.k_max)], args.format)
        return EXIT_NEGATIVE
    _print_report([
        ("status", "solved"),
        ("indices", " ".join(map(str, sol.indices)) or "-"),
        ("match", " ".join(sol.w)),
    ], args.format)
    return EXIT_OK


def cmd_gpcp_encode(args) -> int:
    inst = gpcp.parse_gpcp(Path(args.instance).read_text())
    enc = gpcp.encode_auto(inst)
    text = gpcp.format_encoding(enc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gpcp_roundtrip(args) -> int:
    inst = gpcp.parse_gpcp(Path(args.instance).read_text())
    enc = gpcp.encode_auto(inst)
    sol = gpcp.gpcp_brute_force(enc.instance, args.k_max)
    if sol is None:
        _print_report([("status", "none"), ("k_max", args.k_max)], args.format)
        return EXIT_NEGATIVE
    witness = gpcp.witness_from_solution(enc, sol)
    verified = gpcp.verify_witness(enc, witness.w)
    decoded = gpcp.solution_from_witness(enc, witness)
    ok = verified and decoded == sol
    _print_report([
        ("status", "ok" if ok else "mismatch"),
        ("indices", " ".join(map(str, sol.indices)) or "-"),
        ("match", " ".join(sol.w)),
        ("witness", enc.srs.render(witness.w)),
        ("verified", verified),
        ("decoded_indices", " ".join(map(str, decoded.indices)) or "-"),
    ], args.format)
    if not ok:
        return EXIT_ERROR
    return EXIT_OK


def cmd_trs_normalize(args) -> int:
    trs = terms.parse_trs(Path(args.trs).read_text())
    term = terms.parse_term(args.term, trs)
    try:
        nf = terms.normalize_term(trs, term, args.budget)
    except BudgetExhaustedError as e:
        _print_report([("status", "budget_exhausted"), ("error", str(e))], args.format)
        return EXIT_NEGATIVE
    _print_report([
        ("input", terms.render_term(term)),
        ("normal_form", terms.render_term(nf)),
    ], args.format)
    return EXIT_OK


def _split_top_level(text: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _parse_substitution(text: str, trs) -> terms.Substitution:
    mapping = []
    for item in _split_top_level(text):
        name, sep, image = item.partition("=")
        if not sep:
            raise SrskitError(f"bad binding {item!r}; expected var=term")
        mapping.append((name.strip(), terms.parse_term(image, trs)))
    return terms.Substitution.of(mapping)


def cmd_trs_ct_check(args) -> int:
    trs = terms.parse_trs(Path(args.trs).read_text())
    theta1 = _parse_substitution(args.s1, trs)
    theta2 = _parse_substitution(args.s2, trs)
    term = terms.parse_term(args.term, trs)
    result = terms.ct_check_terms(trs, theta1, theta2, term, args.budget)
    image1 = terms.normalize_term(trs, terms.apply_subst(theta1, term), args.budget)
    image2 = terms.normalize_term(trs, terms.apply_subst(theta2, term), args.budget)
    _print_report([
        ("term", terms.render_term(term)),
        ("image1", terms.render_term(image1)),
        ("image2", terms.render_term(image2)),
        ("equal", result),
    ], args.format)
    return EXIT_OK if result else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srskit",
        description="String-rewriting toolkit: classification, normalization, "
                    "bounded dual-unification searches, correspondence encodings.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_srs(p):
        p.add_argument("srs", help="path to an SRS file")
        p.add_argument("--chars", action="store_true",
                       help="treat every character as one symbol")

    p = sub.add_parser("check", help="classification and convergence report")
    add_srs(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", help="normal form of a string")
    add_srs(p)
    p.add_argument("string", help="space-separated tokens, or eps")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("irr", help="export the irreducible-strings automaton")
    add_srs(p)
    p.add_argument("--dot", action="store_true", help="DOT instead of a table")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_irr)

    p = sub.add_parser("ct", help="common-term search: alpha W ~ beta W")
    add_srs(p)
    p.add_argument("alpha")
    p.add_argument("beta")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--equiv-budget", type=int, default=None)
    p.set_defaults(func=cmd_ct)

    p = sub.add_parser("fp", help="fixed-point search: alpha W ~ W")
    add_srs(p)
    p.add_argument("alpha")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--equiv-budget", type=int, default=None)
    p.set_defaults(func=cmd_fp)

    p = sub.add_parser("ce", help="common-equation search over pairs (W1, W2)")
    add_srs(p)
    p.add_argument("alpha1")
    p.add_argument("alpha2")
    p.add_argument("beta1")
    p.add_argument("beta2")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--equiv-budget", type=int, default=None)
    p.set_defaults(func=cmd_ce)

    gp = sub.add_parser("gpcp", help="correspondence-problem commands")
    gsub = gp.add_subparsers(dest="gpcp_command", required=True)

    p = gsub.add_parser("solve", help="bounded brute-force search")
    p.add_argument("instance")
    p.add_argument("--k-max", type=int, required=True)
    p.set_defaults(func=cmd_gpcp_solve)

    p = gsub.add_parser("encode", help="emit the dwindling system for an instance")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gpcp_encode)

    p = gsub.add_parser("roundtrip", help="solve, build witness, verify, decode, compare")
    p.add_argument("instance")
    p.add_argument("--k-max", type=int, required=True)
    p.set_defaults(func=cmd_gpcp_roundtrip)

    tp = sub.add_parser("trs", help="term-rewriting commands")
    tsub = tp.add_subparsers(dest="trs_command", required=True)

    p = tsub.add_parser("normalize", help="normal form of a term")
    p.add_argument("trs", help="path to a TRS file")
    p.add_argument("term")
    p.add_argument("--budget", type=int, default=10_000)
    p.set_defaults(func=cmd_trs_normalize)

    p = tsub.add_parser("ct-check", help="do two ground substitutions agree on a term")
    p.add_argument("trs", help="path to a TRS file")
    p.add_argument("term")
    p.add_argument("--s1", required=True, help='bindings like "x=p(a), y=p(b)"')
    p.add_argument("--s2", required=True)
    p.add_argument("--budget", type=int, default=10_000)
    p.set_defaults(func=cmd_trs_ct_check)

    return parser


# Imported lazily by cmd_check to keep the module namespace tidy.
from .core import check_convergent as srskit_convergence  # noqa: E402
from .core import classify as srskit_classify  # noqa: E402
from .core import critical_pairs as srskit_critical_pairs  # noqa: E402


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SrskitError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
