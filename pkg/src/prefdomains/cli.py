"""Command-line interface: recognize, distance, generate.

Exit codes: 0 = holds/feasible, 1 = does not hold/infeasible, 2 = usage or
input error, 3 = resource guard exceeded.  Identical invocations on
identical files produce identical output; the lone exception is the
elapsed_ms field of --json distance reports, which reports real wall time.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FormatError, GuardExceededError
from .profiles import parse_profile, serialize_profile
from .recognition import DomainProperty, check
from .reductions import (
    max2sat_to_sc_ad,
    parse_graph,
    parse_max2sat,
    vc_to_beta_ad,
    vc_to_beta_md,
    vc_to_value_ad,
    vc_to_value_md,
)
from .solvers import DeletionMode, decide, min_distance

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

_PROPERTIES = {p.value: p for p in DomainProperty}
_MODES = {m.value: m for m in DeletionMode}

_GRAPH_REDUCTIONS = {
    "vc-value-md": lambda graph, k: vc_to_value_md(graph),
    "vc-value-ad": vc_to_value_ad,
    "vc-beta-md": lambda graph, k: vc_to_beta_md(graph),
    "vc-beta-ad": lambda graph, k: vc_to_beta_ad(graph),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefdomains",
        description="Recognize structured preference domains and compute deletion distances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recognize", help="decide whether a profile lies in a domain")
    rec.add_argument("--property", required=True, choices=sorted(_PROPERTIES))
    rec.add_argument("--input", required=True, help="profile file")
    rec.add_argument("--witness", action="store_true", help="also print the violation or certificate")
    rec.add_argument("--json", action="store_true", help="emit one JSON document")

    dist = sub.add_parser("distance", help="deletion distance to a domain")
    dist.add_argument("--property", required=True, choices=sorted(_PROPERTIES))
    dist.add_argument("--mode", required=True, choices=sorted(_MODES))
    dist.add_argument("--input", required=True, help="profile file")
    dist.add_argument("--k", type=int, default=None, help="decision budget; omit to minimize")
    dist.add_argument("--method", default="auto", choices=["auto", "fpt", "brute", "poly"])
    dist.add_argument("--json", action="store_true", help="emit one JSON document")

    gen = sub.add_parser("generate", help="generate a hardness-construction profile")
    gen.add_argument("reduction", choices=sorted(_GRAPH_REDUCTIONS) + ["max2sat-sc-ad"])
    gen.add_argument("--graph", help="graph file (vertex cover reductions)")
    gen.add_argument("--max2sat", help="clause file (max2sat-sc-ad)")
    gen.add_argument("--k", type=int, default=None, help="deletion budget (vc-value-ad only)")
    gen.add_argument("--output", required=True, help="profile file to write")
    return parser


def _run_recognize(args: argparse.Namespace) -> int:
    profile = parse_profile(Path(args.input).read_text(encoding="utf-8"))
    prop = _PROPERTIES[args.property]
    result = check(profile, prop)
    if args.json:
        print(json.dumps(result.to_json_dict(profile), ensure_ascii=False))
    else:
        verdict = "holds" if result.holds else "does not hold"
        print(f"{prop.value}: {verdict}")
        if args.witness:
            if result.violation is not None:
                print("violation: " + json.dumps(result.violation.to_json_dict(profile), ensure_ascii=False))
            if result.certificate is not None:
                print("certificate: " + " > ".join(profile.voter_names[v] for v in result.certificate))
    return EXIT_HOLDS if result.holds else EXIT_FAILS


def _run_distance(args: argparse.Namespace) -> int:
    profile = parse_profile(Path(args.input).read_text(encoding="utf-8"))
    prop = _PROPERTIES[args.property]
    mode = _MODES[args.mode]
    if args.k is not None:
        if args.k < 0:
            raise FormatError("--k must be non-negative")
        outcome = decide(profile, prop, mode, args.k, method=args.method)
    else:
        outcome = min_distance(profile, prop, mode, method=args.method)
    if args.json:
        print(json.dumps(outcome.to_json_dict(profile), ensure_ascii=False))
    else:
        names = profile.voter_names if mode is DeletionMode.VOTERS else profile.alternative_names
        deleted = ", ".join(names[i] for i in outcome.deleted) or "(nothing)"
        if args.k is None:
            print(f"minimum deletions: {outcome.size}")
            print(f"delete: {deleted}")
        elif outcome.feasible:
            print(f"feasible with {outcome.size} deletion(s): {deleted}")
        else:
            print(f"infeasible within k={args.k}")
    if args.k is None:
        return EXIT_HOLDS
    return EXIT_HOLDS if outcome.feasible else EXIT_FAILS


def _run_generate(args: argparse.Namespace) -> int:
    if args.reduction == "max2sat-sc-ad":
        if args.max2sat is None or args.graph is not None:
            raise FormatError("max2sat-sc-ad takes --max2sat, not --graph")
        instance = parse_max2sat(Path(args.max2sat).read_text(encoding="utf-8"))
        profile, k = max2sat_to_sc_ad(instance)
        derived_k: int | None = k
    else:
        if args.graph is None or args.max2sat is not None:
            raise FormatError(f"{args.reduction} takes --graph, not --max2sat")
        if args.reduction == "vc-value-ad":
            if args.k is None:
                raise FormatError("vc-value-ad requires --k (the deletion budget)")
            if args.k < 0:
                raise FormatError("--k must be non-negative")
        graph = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
        profile = _GRAPH_REDUCTIONS[args.reduction](graph, args.k)
        derived_k = None
    Path(args.output).write_text(serialize_profile(profile), encoding="utf-8")
    print(f"wrote profile with {profile.m} alternatives and {profile.n} voters to {args.output}")
    if derived_k is not None:
        print(f"k = {derived_k}")
    return EXIT_HOLDS


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "recognize":
            return _run_recognize(args)
        if args.command == "distance":
            return _run_distance(args)
        return _run_generate(args)
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    raise SystemExit(main())
