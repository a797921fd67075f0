"""Command-line interface.

Subcommands: catalog, build, count, verify, svg, sum, iterate, pfree.
Exit codes: 0 on success, 1 when a verification or build check fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import constructions as cons
from .documents import dump_point_set, load_point_set
from .errors import PatternForgeError
from .geom import PointSet, max_collinear
from .patterns import Pattern, count_similar
from .verify import DEFAULT_SEED, SCOPES, run_acceptance_suite

__all__ = ["main", "build_parser"]

_CONVERTERS = {"int": int, "fraction": Fraction, "str": str}


def _resolve_pattern(spec: str, parser: argparse.ArgumentParser) -> Pattern:
    if os.path.exists(spec):
        pts, _ = load_point_set(spec)
        return Pattern(pts)
    name, _, arg = spec.partition(":")
    try:
        if name == "triangle":
            return cons.equilateral_triangle()
        if name == "square":
            return cons.square_pattern()
        if name == "kgon":
            return cons.regular_polygon(int(arg or 5))
        if name == "isosceles":
            return cons.isosceles_triangle(Fraction(arg or "1/5"))
        if name == "scalene":
            return cons.scalene_triangle(seed=int(arg or 0))
    except (ValueError, ZeroDivisionError) as exc:
        parser.error(f"bad pattern spec {spec!r}: {exc}")
    parser.error(
        f"unknown pattern {spec!r}: expected a point-set JSON file or one "
        f"of triangle, square, kgon:K, isosceles:A/B, scalene:SEED")
    raise AssertionError  # parser.error never returns


def _write_output(points: PointSet, metadata: dict, out: str | None) -> None:
    if out is None:
        return
    if out == "-":
        from .documents import dumps_point_set
        sys.stdout.write(dumps_point_set(points, metadata))
    else:
        dump_point_set(points, out, metadata)


def _cmd_catalog(args, parser) -> int:
    rows = sorted(cons.CATALOG.values(), key=lambda e: (e.kind, e.name))
    for e in rows:
        print(f"{e.name:22s} [{e.kind}] {e.summary}")
        for pname, ptype, default, phelp in e.params:
            print(f"    --set {pname}=<{ptype}>  (default {default}) "
                  f"{phelp}")
    return 0


def _cmd_build(args, parser) -> int:
    entry = cons.CATALOG.get(args.recipe)
    if entry is None:
        parser.error(f"unknown recipe {args.recipe!r}; see 'catalog'")
    declared = {p[0]: p[1] for p in entry.params}
    kwargs = {}
    for item in args.set or []:
        key, sep, raw = item.partition("=")
        if not sep or key not in declared:
            parser.error(f"unknown or malformed parameter {item!r} for "
                         f"{args.recipe}; declared: {sorted(declared)}")
        try:
            kwargs[key] = _CONVERTERS[declared[key]](raw)
        except (ValueError, ZeroDivisionError) as exc:
            parser.error(f"bad value for {key}: {exc}")
    if args.seed is not None and "seed" in declared:
        kwargs.setdefault("seed", args.seed)
    kwargs["workers"] = args.workers
    if entry.kind == "pattern":
        kwargs.pop("workers", None)
    report = entry.builder(**kwargs)
    print(report.summary_line())
    _write_output(report.output, report.metadata(), args.output)
    if args.svg:
        from .report import render_build
        render_build(report.output, report.count, args.svg,
                     title=report.recipe)
        print(f"figure written to {args.svg}")
    return 0 if report.ok else 1


def _cmd_count(args, parser) -> int:
    pattern = _resolve_pattern(args.pattern, parser)
    target, _ = load_point_set(args.target)
    rep = count_similar(pattern, target, witness_cap=args.witnesses,
                        workers=args.workers)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    else:
        print(f"points={rep.target_size} copies={rep.copies} "
              f"ordered={rep.ordered_matches} sym={rep.sym_order} "
              f"index={rep.index:.12g}")
    return 0


def _cmd_verify(args, parser) -> int:
    log = None if args.quiet else \
        (lambda msg: print(f"  .. {msg}", file=sys.stderr, flush=True))
    led = run_acceptance_suite(scope=args.scope, seed=args.seed,
                               workers=args.workers, log=log)
    print(led.format_table())
    if args.out_dir:
        from .report import write_ledger_report
        for path in write_ledger_report(led, args.out_dir):
            print(f"wrote {path}")
    return 0 if led.ok else 1


def _cmd_svg(args, parser) -> int:
    points, meta = load_point_set(args.input)
    witnesses = None
    if args.pattern:
        pattern = _resolve_pattern(args.pattern, parser)
        rep = count_similar(pattern, points, witness_cap=args.max_polygons)
        witnesses = rep.witness_sample
    from .report import render_point_set
    render_point_set(points, args.output, witnesses=witnesses,
                     title=args.title or meta.get("recipe"))
    print(f"figure written to {args.output}")
    return 0


def _cmd_sum(args, parser) -> int:
    a, _ = load_point_set(args.a)
    b, _ = load_point_set(args.b)
    m = args.collinear_bound or max(max_collinear(a), max_collinear(b),
                                    2) + 1
    param, s = cons.minkowski_sum_generic(a, b, m, seed=args.seed)
    print(f"sum: n={len(s)} conductor={s.order} collinear<{m} "
          f"v={param.value.to_text()} attempts={param.attempts}")
    _write_output(s, {"recipe": "minkowski_sum", "m": m,
                      "v": param.value.to_text()}, args.output)
    return 0


def _cmd_iterate(args, parser) -> int:
    pattern = _resolve_pattern(args.pattern, parser)
    base, _ = load_point_set(args.base)
    m = args.collinear_bound or max(max_collinear(base), 2) + 1
    report = cons.minkowski_iterate(pattern, base, args.depth, m,
                                    seed=args.seed, workers=args.workers)
    print(report.summary_line())
    print(report.checks.format_table())
    _write_output(report.output, report.metadata(), args.output)
    return 0 if report.ok else 1


def _cmd_pfree(args, parser) -> int:
    pattern = _resolve_pattern(args.pattern, parser)
    report = cons.pfree_iterate(pattern, args.depth, seed=args.seed,
                                strict=args.strict, workers=args.workers)
    print(report.summary_line())
    print(report.checks.format_table())
    _write_output(report.output, report.metadata(), args.output)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patternforge",
        description="build and verify point sets with many similar copies "
                    "of a pattern")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list available recipes")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("build", help="run a catalog recipe")
    p.add_argument("recipe")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="recipe parameter, repeatable")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", metavar="FILE.json",
                   help="write the point-set document ('-' for stdout)")
    p.add_argument("--svg", metavar="FILE",
                   help="also render the set with witness polygons")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("count", help="count pattern copies in a point set")
    p.add_argument("--pattern", required=True,
                   help="pattern spec or point-set JSON file")
    p.add_argument("target", help="point-set JSON file")
    p.add_argument("--witnesses", type=int, default=64,
                   help="max witness tuples to retain")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true",
                   help="print the full report as JSON")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--scope", choices=SCOPES, default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", metavar="DIR",
                   help="write ledger.json, ledger.csv and a summary figure")
    p.add_argument("--quiet", action="store_true",
                   help="suppress progress lines")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("svg", help="render a point-set document")
    p.add_argument("input", help="point-set JSON file")
    p.add_argument("-o", "--output", required=True, metavar="FILE")
    p.add_argument("--pattern", help="overlay witness polygons for this "
                                     "pattern")
    p.add_argument("--max-polygons", type=int, default=64)
    p.add_argument("--title")
    p.set_defaults(func=_cmd_svg)

    p = sub.add_parser("sum", help="generic Minkowski sum of two documents")
    p.add_argument("a", help="point-set JSON file")
    p.add_argument("b", help="point-set JSON file")
    p.add_argument("-m", "--collinear-bound", type=int, default=None,
                   help="forbid m collinear points (default: auto)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", metavar="FILE.json")
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("iterate",
                       help="iterated generic sums of a set with itself")
    p.add_argument("--pattern", required=True)
    p.add_argument("base", help="point-set JSON file")
    p.add_argument("-j", "--depth", type=int, required=True)
    p.add_argument("-m", "--collinear-bound", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", metavar="FILE.json")
    p.set_defaults(func=_cmd_iterate)

    p = sub.add_parser("pfree",
                       help="parallelogram-free recursion from a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("-m", "--depth", type=int, required=True)
    p.add_argument("--strict", action="store_true",
                   help="also forbid disjoint parallel segments")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", metavar="FILE.json")
    p.set_defaults(func=_cmd_pfree)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except PatternForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
