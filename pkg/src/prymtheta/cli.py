"""Command-line front end: ``prymtheta {classes,derive,counts,g3-example,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import f2theta as f2
from . import hyperelliptic as hyp
from ._config import DEFAULT_SEED, EnumerationCapExceeded, check_cap
from .derivation import derive_classes
from .f2theta import Parity
from .render import FORMATS, format_fraction, render_classes, render_table
from .verification import run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# above this genus --brute-force checks a seeded sample of eta instead of all of them
EXHAUSTIVE_ETA_MAX = 4
ETA_SAMPLES = 8


def _parity_arg(text: str) -> Parity | None:
    return None if text == "both" else Parity.parse(text)


def cmd_classes(args: argparse.Namespace) -> int:
    print(render_classes(args.genus, _parity_arg(args.parity), args.format))
    return EXIT_OK


def cmd_derive(args: argparse.Namespace) -> int:
    report = derive_classes(args.genus)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    elif args.format == "plain":
        print(f"derivation at genus {report.genus}")
        print("solve order:")
        for step in report.order:
            print(f"  {step}")
        header = ["step", "parity", "equation", "lhs", "rhs", "residue"]
        rows = [[eq.step, str(eq.parity), eq.name, eq.lhs, eq.rhs, eq.residue] for eq in report.equations]
        print(render_table(header, rows, "plain"))
        print(f"assumptions: {'; '.join(report.assumptions)}")
        for line in report.mismatches:
            print(f"mismatch: {line}")
        print(f"match={'true' if report.match else 'false'}")
    else:
        header = ["step", "parity", "equation", "lhs", "rhs", "residue"]
        rows = [[eq.step, str(eq.parity), eq.name, eq.lhs, eq.rhs, eq.residue] for eq in report.equations]
        print(render_table(header, rows, args.format, title=f"derivation g={report.genus}"))
    if not report.ok:
        for eq in report.nonzero_residues():
            print(f"nonzero residue: {eq.parity} {eq.name}: {format_fraction(eq.residue)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _odd_preserving_brute(g: int, seed: int) -> set[int]:
    if g <= EXHAUSTIVE_ETA_MAX:
        etas = [v for v in f2.enumerate_vectors(g) if not v.is_zero()]
    else:
        etas = f2.sample_nonzero_vectors(g, ETA_SAMPLES, seed)
    return {f2.brute_odd_preserving(g, eta) for eta in etas}


def cmd_counts(args: argparse.Namespace) -> int:
    g = args.genus
    if args.brute_force:
        check_cap(g)
    rows: list[list] = []

    def row(name: str, closed: int, brute=None) -> None:
        if not args.brute_force:
            rows.append([name, closed])
            return
        if isinstance(brute, set):
            shown = "/".join(map(str, sorted(brute)))
            ok = brute == {closed}
        else:
            shown, ok = brute, brute == closed
        rows.append([name, closed, shown, "OK" if ok else "MISMATCH"])

    census = f2.census(g) if args.brute_force else {}
    row("even", f2.count_even(g), census.get(Parity.EVEN))
    row("odd", f2.count_odd(g), census.get(Parity.ODD))
    row(
        "odd-preserving",
        f2.count_odd_preserving(g),
        _odd_preserving_brute(g, args.seed) if args.brute_force else None,
    )
    if g >= 3:
        for p in Parity:
            brute = f2.brute_degree_over_teixidor(g, p) if args.brute_force else None
            row(f"degree over T_g ({p})", f2.degree_over_teixidor(g, p), brute)
    for i in range(1, g // 2 + 1):
        for kind in ("ee", "oo"):
            brute = f2.brute_boundary_pairs(g, i, kind) if args.brute_force else None
            row(f"boundary pairs i={i} {kind}", f2.count_boundary_pairs(g, i, kind), brute)

    header = ["quantity", "closed form"] + (["enumeration", "flag"] if args.brute_force else [])
    print(render_table(header, rows, args.format, title=f"theta-characteristic counts, genus {g}"))
    if args.brute_force and any(r[-1] != "OK" for r in rows):
        return EXIT_FAIL
    return EXIT_OK


def cmd_g3_example(args: argparse.Namespace) -> int:
    empty = hyp.ThetaSubset(3, 0)
    rows = []
    tally = {kind: 0 for kind in hyp.DivisorKind}
    agree = True
    for u in hyp.enumerate_two_torsion(3, nontrivial=True):
        kind = hyp.classify_genus3(u)
        twisted = hyp.parity(hyp.twist_theta(empty, u))
        agree &= (kind is hyp.DivisorKind.ODD_DIVISOR) == (twisted is Parity.ODD)
        tally[kind] += 1
        rows.append([str(u), len(u.members), str(twisted), str(kind)])
    header = ["class", "size", "parity of twist", "divisor"]
    print(render_table(header, rows, args.format, title="genus 3: nontrivial two-torsion classes"))
    if args.format in ("plain", "latex"):
        prefix = "% " if args.format == "latex" else ""
        print(
            f"{prefix}total {len(rows)}: odd-divisor {tally[hyp.DivisorKind.ODD_DIVISOR]},"
            f" even-divisor {tally[hyp.DivisorKind.EVEN_DIVISOR]}"
        )
    return EXIT_OK if agree else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.max_genus, seed=args.seed)
    passed = all(r.passed for r in results)
    if args.format == "json":
        summary = {
            "max_genus": args.max_genus,
            "passed": passed,
            "total": len(results),
            "failures": [r.name for r in results if not r.passed],
            "checks": [{k: v for k, v in r.to_dict().items() if k != "seconds"} for r in results],
        }
        print(json.dumps(summary, indent=2))
    else:
        rows = [[r.name, "PASS" if r.passed else "FAIL", r.detail] for r in results]
        print(render_table(["check", "result", "detail"], rows, args.format, title=f"verify up to genus {args.max_genus}"))
        if args.format == "plain":
            print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prymtheta",
        description="Exact divisor classes of Prym semicanonical-pencil divisors and their finite-geometry checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(p: argparse.ArgumentParser, default: str = "plain") -> None:
        p.add_argument("--format", choices=FORMATS, default=default)

    p = sub.add_parser("classes", help="coefficient tables of the even/odd divisor classes")
    p.add_argument("--genus", "-g", type=int, required=True)
    p.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    with_format(p)
    p.set_defaults(func=cmd_classes, min_genus=3)

    p = sub.add_parser("derive", help="solve for the classes from counts and test curves")
    p.add_argument("--genus", "-g", type=int, required=True)
    with_format(p)
    p.set_defaults(func=cmd_derive, min_genus=3)

    p = sub.add_parser("counts", help="theta-characteristic counts, optionally checked by enumeration")
    p.add_argument("--genus", "-g", type=int, required=True)
    p.add_argument("--brute-force", action="store_true", help="cross-check by exhaustive enumeration")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    with_format(p)
    p.set_defaults(func=cmd_counts, min_genus=1)

    p = sub.add_parser("g3-example", help="genus-3 classification of the 63 nontrivial classes")
    with_format(p)
    p.set_defaults(func=cmd_g3_example)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--max-genus", type=int, default=6)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    with_format(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    min_genus = getattr(args, "min_genus", None)
    if min_genus is not None and args.genus < min_genus:
        parser.error(f"--genus must be at least {min_genus}, got {args.genus}")
    if args.command == "verify" and args.max_genus < 3:
        parser.error(f"--max-genus must be at least 3, got {args.max_genus}")
    try:
        return args.func(args)
    except EnumerationCapExceeded as exc:
        print(f"prymtheta {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
