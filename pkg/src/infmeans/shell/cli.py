"""Command line: evaluate means, check properties, scan slices, find slice roots.

Exit codes: 0 success (including "holds" and "inapplicable"), 2 a property
violation or a failed fixture, 1 a usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence

from infmeans.errors import InfMeansError
from infmeans.means import REGISTRY, mean_eval
from infmeans.proplab import fixtures as fx
from infmeans.proplab.catalog import run_paper_suite
from infmeans.proplab.laws import (
    INTERNAL,
    MONOTONICITY_KINDS,
    STRICT_STRONG,
    STRONG,
    condensed_check,
    internality_check,
    monotonicity_check,
    point_symmetry_check,
    shift_invariance_check,
)
from infmeans.proplab.probes import FIXED_POINT, MEAN_VALUE, slice_mean_root, slice_scan
from infmeans.proplab.report import VIOLATED, PropertyReport
from infmeans.proplab.suites import LAWS, META, run_law, run_meta
from infmeans.setcore.atoms import Interval
from infmeans.setcore.canonical import CanonicalSet, canonicalize
from infmeans.shell.dsl import parse_dsl
from infmeans.shell.fmt import format_value, value_text

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2

_RAT = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(text: str) -> Fraction:
    """``p`` or ``p/q``; decimals are refused so every input stays exact."""
    if not _RAT.match(text.strip()):
        raise argparse.ArgumentTypeError(f"not a rational p or p/q: {text!r}")
    return Fraction(text.strip())


def _ivs(*pairs) -> CanonicalSet:
    return canonicalize([Interval(Fraction(a), Fraction(b)) for a, b in pairs])


# named instances for `check --fixture`
CHECK_FIXTURES: Dict[str, Callable[[], dict]] = {
    "part-shift-weakening": lambda: {"H1": _ivs((0, 1)), "H2": _ivs((0, 1), (11, 12)), "x": 1},
    "union-weakening": lambda: {"A": _ivs((5, 13)), "B": _ivs((2, 5), (13, 17)),
                                "C": _ivs((0, 2), (13, 17))},
    "part-shift-invariance-weakening": lambda: {"H1": _ivs((0, 2), (3, 4)), "H2": _ivs((2, 3)),
                                                "x": 1},
    "base-counterexample": lambda: {"H1": _ivs((1, 2), (3, 4)), "H2": _ivs((Fraction(1, 2), 1), (3, 4))},
    "countable-pair": lambda: dict(zip(("H1", "H2"), fx.base_counterexample_pair())),
    "midrange-witness": lambda: {"H": fx.midrange_witness()},
    "three-clusters": lambda: {"H": fx.three_clusters()},
    "cantor-with-interval": lambda: {"H": fx.cantor_with_interval()},
}

_INTERNALITY = {"internal": INTERNAL, "strong-internal": STRONG, "strict-strong-internal": STRICT_STRONG}


def _fixture_check(prop: str, mean: str, bundle: dict) -> PropertyReport:
    if prop in _INTERNALITY:
        return internality_check(mean, bundle["H"], _INTERNALITY[prop])
    if prop == "condensed":
        return condensed_check(mean, bundle["H"])
    if prop == "point-symmetric":
        return point_symmetry_check(mean, bundle["H"])
    if prop in ("part-shift-invariant", "self-shift-invariant"):
        return shift_invariance_check(prop.split("-")[0], mean, bundle)
    kind = prop[:-len("-monotone")] if prop.endswith("-monotone") else prop
    if kind not in MONOTONICITY_KINDS:
        kind = prop
    if kind not in MONOTONICITY_KINDS:
        raise UsageError(f"property {prop!r} cannot be checked on a fixture")
    return monotonicity_check(kind, mean, bundle)


def _print_report(rep: PropertyReport, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(rep.to_dict(), indent=2, ensure_ascii=False) + "\n")
        return
    out.write(f"{rep.property} [{rep.mean}]: {rep.verdict}")
    out.write(f" ({rep.applicable}/{rep.trials} instances)\n" if rep.trials > 1 else "\n")
    if rep.note:
        out.write(f"  note: {rep.note}\n")
    for s in rep.witness_sets:
        out.write(f"  set: {s}\n")
    for k, v in rep.witness_values.items():
        out.write(f"  {k} = {format_value(v) if isinstance(v, Fraction) else v}\n")


# --- commands ----------------------------------------------------------------

def cmd_eval(args, out) -> int:
    h = parse_dsl(args.set)
    r = mean_eval(args.mean, h)
    if args.json:
        doc = {"mean": args.mean, "set": str(h), "in_domain": r.in_domain,
               "value": value_text(r.value) if r.in_domain else None, "exact": r.exact,
               "reason": r.domain.reason or None}
        out.write(json.dumps(doc, indent=2) + "\n")
    elif r.in_domain:
        out.write(format_value(r.value) + "\n")
    if not r.in_domain:
        sys.stderr.write(f"out of domain: {r.domain.reason}: {r.domain.message}\n")
        return EXIT_USAGE
    return EXIT_OK


def cmd_check(args, out) -> int:
    if args.fixture:
        if args.fixture not in CHECK_FIXTURES:
            raise UsageError(f"unknown fixture {args.fixture!r}; known: {', '.join(CHECK_FIXTURES)}")
        rep = _fixture_check(args.property, args.mean, CHECK_FIXTURES[args.fixture]())
    else:
        if args.seed is None:
            raise UsageError("check needs --fixture or --seed")
        if args.property in LAWS:
            res = run_law(args.property, args.mean, args.seed, args.trials)
        elif args.property in META:
            res = run_meta(args.property, args.mean, args.seed, args.trials)
        else:
            raise UsageError(f"unknown property {args.property!r}")
        rep = res.as_report()
    _print_report(rep, args.json, out)
    return EXIT_VIOLATION if rep.verdict == VIOLATED else EXIT_OK


def cmd_scan(args, out) -> int:
    h = parse_dsl(args.set)
    res = slice_scan(args.mean, h, args.start, args.stop, args.step, args.side)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "value", "exact", "in_domain"])
    for row in res.rows:
        w.writerow([str(row.x), "" if row.value is None else value_text(row.value),
                    str(row.exact).lower(), str(row.in_domain).lower()])
    text = buf.getvalue()
    if args.out in (None, "-"):
        out.write(text)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as f:
            f.write(text)
    for a, b, gap in res.jumps:
        sys.stderr.write(f"jump between {a} and {b}: {gap}\n")
    return EXIT_OK


def cmd_root(args, out) -> int:
    h = parse_dsl(args.set)
    r = slice_mean_root(args.mean, h, args.mode, args.tol)
    out.write(f"x = {format_value(r.x)}\n")
    out.write(f"bracket = [{r.lo}, {r.hi}]\n")
    out.write(f"residual = {format_value(r.residual)}\n")
    out.write(f"kind = {r.kind}\n")
    return EXIT_OK


def cmd_suite(args, out) -> int:
    rep = run_paper_suite()
    for o in rep.outcomes:
        out.write(f"{o.status:8} {o.name}\n")
        if o.status != "pass":
            for k in o.expected:
                out.write(f"           {k}: expected {o.expected[k]}, got {o.observed.get(k)}\n")
            if o.note:
                out.write(f"           {o.note}\n")
    out.write(f"{rep.passed} passed, {len(rep.failed)} failed, {len(rep.flagged)} flagged\n")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            json.dump(rep.to_dict(), f, indent=2, ensure_ascii=False)
            f.write("\n")
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="infmeans", description="Means of infinite sets: evaluation and property checks.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    means = sorted(REGISTRY)

    e = sub.add_parser("eval", help="evaluate a mean on a set")
    e.add_argument("--mean", required=True, choices=means)
    e.add_argument("--set", required=True)
    e.add_argument("--json", action="store_true")
    e.set_defaults(run=cmd_eval)

    c = sub.add_parser("check", help="check a property on a fixture or on seeded instances")
    c.add_argument("--property", required=True)
    c.add_argument("--mean", required=True, choices=means)
    c.add_argument("--fixture")
    c.add_argument("--seed", type=int)
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_check)

    s = sub.add_parser("scan", help="slice means on a grid, as CSV")
    s.add_argument("--mean", required=True, choices=means)
    s.add_argument("--set", required=True)
    s.add_argument("--from", dest="start", required=True, type=rational)
    s.add_argument("--to", dest="stop", required=True, type=rational)
    s.add_argument("--step", required=True, type=rational)
    s.add_argument("--side", choices=("le", "ge"), default="le")
    s.add_argument("--out")
    s.set_defaults(run=cmd_scan)

    r = sub.add_parser("root", help="bisect the slice-mean residual")
    r.add_argument("--mean", required=True, choices=means)
    r.add_argument("--set", required=True)
    r.add_argument("--mode", choices=(MEAN_VALUE, FIXED_POINT), default=MEAN_VALUE)
    r.add_argument("--tol", type=rational, default=Fraction(1, 10 ** 9))
    r.set_defaults(run=cmd_root)

    u = sub.add_parser("suite", help="recompute the worked-example catalog")
    u.add_argument("name", choices=("paper",))
    u.add_argument("--report")
    u.set_defaults(run=cmd_suite)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "run", None):
            raise UsageError("a command is required")
        return args.run(args, out)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (InfMeansError, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
