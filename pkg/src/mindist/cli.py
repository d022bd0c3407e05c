"""Command line front end.

Exit codes: 0 when the requested check or computation succeeds, 1 when
a verification reports failures (or a hand is not declarable), 2 for
usage errors.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from .cards import JokerContext, check_hand_against_context, parse_card, parse_hand
from .certificates import (
    BOUND_LIMITS,
    construct_prop1,
    construct_prop2,
    construct_prop3,
    verify_certificate,
)
from .declare import is_declarable
from .melds import SEQ, Meld
from .montecarlo import (
    DEFAULT_SEED,
    render_histogram_png,
    sample_distribution,
    write_histogram_csv,
)
from .solver import min_dist
from .verifiers import CaseReport, certify_extremal, check_lemma1, verify_3332

_CONSTRUCTORS = {1: construct_prop1, 2: construct_prop2, 3: construct_prop3}


def _hand_context(parser: argparse.ArgumentParser, args) -> tuple:
    try:
        hand = parse_hand(args.hand)
    except ValueError as exc:
        parser.error(f"argument --hand: {exc}")
    try:
        wcj = parse_card(args.wcj)
        ctx = JokerContext(wcj)
        check_hand_against_context(hand, ctx)
    except ValueError as exc:
        parser.error(f"argument --wcj: {exc}")
    return hand, ctx


def _meld_doc(meld: Meld) -> dict:
    doc = {"kind": meld.kind, "cards": [str(c) for c in meld.cards]}
    if meld.kind == SEQ:
        doc["suit"] = meld.suit.symbol
        doc["start"] = meld.start
    else:
        doc["value"] = meld.value
    return doc


def _emit(args, doc: dict, human_lines) -> None:
    if args.format == "structured":
        print(json.dumps(doc, indent=2))
    else:
        for line in human_lines:
            print(line)


def cmd_mindist(parser, args) -> int:
    hand, ctx = _hand_context(parser, args)
    res = min_dist(hand, ctx)
    doc = {
        "command": "mindist",
        "hand": [str(c) for c in hand],
        "wcj": str(ctx.wildcard),
        "value": res.value,
        "witness": [_meld_doc(m) for m in res.witness.melds],
        "kept": [str(c) for c in res.kept],
        "replacements": [[str(a), str(b)] for a, b in res.replacements],
    }
    lines = [
        f"minimum replacements: {res.value}",
        f"witness: {res.witness.render(ctx)}",
        f"kept ({len(res.kept)}): " + " ".join(str(c) for c in res.kept),
    ]
    if res.replacements:
        lines.append(
            "replacements: "
            + ", ".join(f"{a}->{b}" for a, b in res.replacements)
        )
    _emit(args, doc, lines)
    return 0


def cmd_declarable(parser, args) -> int:
    hand, ctx = _hand_context(parser, args)
    ok = is_declarable(hand, ctx)
    doc = {
        "command": "declarable",
        "hand": [str(c) for c in hand],
        "wcj": str(ctx.wildcard),
        "declarable": ok,
    }
    _emit(args, doc, [f"declarable: {'yes' if ok else 'no'}"])
    return 0 if ok else 1


def cmd_certify(parser, args) -> int:
    hand, ctx = _hand_context(parser, args)
    cert = _CONSTRUCTORS[args.prop](hand, ctx)
    reasons = verify_certificate(hand, cert, ctx)
    doc = {
        "command": "certify",
        "prop": args.prop,
        "bound_source": cert.bound_source,
        "claimed_distance": cert.claimed_distance,
        "limit": BOUND_LIMITS[cert.bound_source],
        "fallback": cert.fallback,
        "target": [str(c) for c in cert.target],
        "witness": [_meld_doc(m) for m in cert.witness.melds],
        "verified": not reasons,
        "reasons": list(reasons),
    }
    lines = [
        f"bound {cert.bound_source}: claimed {cert.claimed_distance} "
        f"(limit {BOUND_LIMITS[cert.bound_source]})"
        + (" via fallback" if cert.fallback else ""),
        f"witness: {cert.witness.render(ctx)}",
        "verification: " + ("ok" if not reasons else "failed: " + ", ".join(reasons)),
    ]
    _emit(args, doc, lines)
    return 0 if not reasons else 1


def _report_doc(check: str, report: CaseReport) -> dict:
    return {
        "command": "verify",
        "check": check,
        "universe": report.universe,
        "cases_enumerated": report.cases_enumerated,
        "cases_passed": report.cases_passed,
        "failures": list(report.failures),
        "escalations": report.escalations,
        "metrics": report.metrics,
        "ok": report.ok,
    }


def _report_lines(report: CaseReport):
    lines = [
        f"universe: {report.universe}",
        f"cases: {report.cases_enumerated:,}  passed: {report.cases_passed:,}  "
        f"failures: {len(report.failures):,}  escalations: {report.escalations:,}",
    ]
    if report.metrics:
        lines.append(
            "metrics: " + " ".join(f"{k}={v}" for k, v in report.metrics.items())
        )
    for failure in report.failures[:5]:
        lines.append(f"  failed: {failure}")
    if len(report.failures) > 5:
        lines.append(f"  ... and {len(report.failures) - 5} more")
    lines.append("result: " + ("PASS" if report.ok else "FAIL"))
    return lines


def cmd_verify(parser, args) -> int:
    if args.check == "lemma1":
        report = check_lemma1()
    elif args.check == "3332":
        report = verify_3332(args.model, workers=args.workers)
    else:
        report = certify_extremal()
    _emit(args, _report_doc(args.check, report), _report_lines(report))
    return 0 if report.ok else 1


def cmd_sample(parser, args) -> int:
    if args.n <= 0:
        parser.error("argument --n: must be a positive integer")
    report = sample_distribution(args.n, seed=args.seed, workers=args.workers)
    artifacts = {}
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / "histogram.csv"
        png_path = out / "histogram.png"
        write_histogram_csv(report, csv_path)
        render_histogram_png(report, png_path)
        artifacts = {"csv": str(csv_path), "png": str(png_path)}
    doc = {
        "command": "sample",
        "sample_size": report.sample_size,
        "seed": report.seed,
        "histogram": {str(v): c for v, c in report.histogram.items()},
        "mass_2_to_4": report.mass_2_to_4,
        "max_observed": report.max_observed,
        "artifacts": artifacts,
    }
    lines = [f"n: {report.sample_size}  seed: {report.seed}", "histogram:"]
    lines += [f"  {v}: {c}" for v, c in report.histogram.items()]
    lines += [
        f"mass[2..4]: {report.mass_2_to_4:.4f}",
        f"max observed: {report.max_observed}",
    ]
    if artifacts:
        lines.append(f"wrote {artifacts['csv']} and {artifacts['png']}")
    _emit(args, doc, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mindist",
        description="Declaration distance tools for 13-card hands with jokers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument(
        "--format",
        choices=("human", "structured"),
        default="human",
        help="human-readable lines or a single JSON document",
    )

    hand_args = argparse.ArgumentParser(add_help=False)
    hand_args.add_argument(
        "--hand",
        required=True,
        help="13 space-separated card tokens, e.g. '2H 10C ... JK'",
    )
    hand_args.add_argument(
        "--wcj", required=True, help="face-up wildcard card token, e.g. AH"
    )

    p = sub.add_parser(
        "mindist",
        parents=[hand_args, fmt],
        help="exact minimum replacements for a hand",
    )
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser(
        "declarable",
        parents=[hand_args, fmt],
        help="whether the hand can declare as dealt",
    )
    p.set_defaults(func=cmd_declarable)

    p = sub.add_parser(
        "certify",
        parents=[hand_args, fmt],
        help="build and verify a constructive distance certificate",
    )
    p.add_argument(
        "--prop",
        type=int,
        choices=(1, 2, 3),
        required=True,
        help="which construction to use (bounds 9, 8, 7)",
    )
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser(
        "verify", parents=[fmt], help="run an exhaustive case check"
    )
    p.add_argument(
        "check",
        choices=("lemma1", "3332", "extremal"),
        help="which sweep to run",
    )
    p.add_argument(
        "--model",
        choices=("paper", "faithful"),
        default="paper",
        help="3332 only: abstract linear model or full game model",
    )
    p.add_argument(
        "--workers", type=int, default=1, help="worker processes for 3332"
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "sample",
        parents=[fmt],
        help="exact distance histogram over seeded random hands",
    )
    p.add_argument("--n", type=int, required=True, help="number of hands")
    p.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help="sampling seed"
    )
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument(
        "--out",
        default=None,
        help="directory for histogram.csv and histogram.png",
    )
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    raise SystemExit(main())
