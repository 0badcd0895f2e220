"""Command-line frontend.

Subcommands front the library one-to-one; the CLI does no arithmetic of its
own.  Exit codes: 0 success, 1 verification failure, 2 usage or domain
error, 3 capacity (including a sieve too small for the request).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

from . import atlas, core, density, mersenne, sievefile
from .errors import CapacityError, InternalInconsistencyError, SieveFileError

_EVAL_FNS = {
    "psibar": core.psi_bar,
    "psi": core.dedekind_psi,
    "phi": core.euler_phi,
    "bigd": core.big_d,
    "lambda": core.lambda_additive,
}

DEFAULT_CLASS_TABLE_CAP = 1 << 22


def _parse_n_range(text: str):
    """Single n ('12') or inclusive range ('3..20')."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        a, b = int(lo), int(hi)
        if a < 1 or b < a:
            raise ValueError(f"bad range {text!r}: need 1 <= lo <= hi")
        return range(a, b + 1)
    n = int(text)
    if n < 1:
        raise ValueError("n must be >= 1")
    return [n]


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_eval(args) -> int:
    fn = _EVAL_FNS[args.fn]
    rows = []
    for n in _parse_n_range(args.n):
        value = fn(n)
        if args.fn == "lambda":
            cls: Optional[int] = value
            section: Optional[str] = atlas.section_of(n, value)
        else:
            cls = section = None
        rows.append({"n": n, "value": value, "class": cls, "section": section})
    if args.format == "json":
        _print_json(rows)
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["n", "value", "class", "section"])
        for r in rows:
            w.writerow([r["n"], r["value"], r["class"], r["section"]])
    else:
        for r in rows:
            line = f"{r['n']} {r['value']}"
            if r["class"] is not None:
                line += f" {r['class']} {r['section']}"
            print(line)
    return 0


def cmd_sieve(args) -> int:
    table = atlas.build_sieve(args.limit)
    checksum = sievefile.save_sieve(table, args.out)
    print(f"wrote {args.out}: limit={table.limit} backend={table.backend} checksum={checksum}")
    return 0


def _table_for(args, k: int) -> atlas.SieveTable:
    if args.sieve:
        return sievefile.load_sieve(args.sieve)
    limit = args.limit if args.limit else max(4, min(1 << (k + 1), DEFAULT_CLASS_TABLE_CAP))
    return atlas.build_sieve(limit)


def cmd_classes(args) -> int:
    if args.k < 0:
        raise ValueError("class index must be >= 0")
    table = _table_for(args, args.k)
    largest: Optional[int] = None
    if args.largest_odd:
        largest = atlas.largest_odd_in_class(table, args.k)
    res = atlas.class_members(table, args.k)
    members = res.members
    truncated = False
    if args.max_members is not None and len(members) > args.max_members:
        members = members[: args.max_members]
        truncated = True
    ex = res.extremes
    if args.format == "json":
        payload = {
            "k": res.k,
            "members": [[n, label] for n, label in members],
            "extremes": {
                "min_odd": ex.min_odd,
                "min_even": ex.min_even,
                "max_odd": ex.max_odd,
                "max_even": ex.max_even,
            },
            "complete": res.complete,
            "table_limit": table.limit,
        }
        if truncated:
            payload["truncated"] = True
        if largest is not None:
            payload["largest_odd"] = largest
        _print_json(payload)
    else:
        note = "complete" if res.complete else f"incomplete (table limit {table.limit})"
        print(f"class {res.k}: {len(res.members)} members, {note}")
        for n, label in members:
            print(f"{n} {label}" if args.sections else str(n))
        if truncated:
            print(f"... truncated to {args.max_members} members")
        if args.extremes:
            print(
                f"extremes: min_odd={ex.min_odd} min_even={ex.min_even}"
                f" max_odd={ex.max_odd} max_even={ex.max_even}"
            )
        if largest is not None:
            print(f"largest_odd={largest}")
    return 0


def _verify_reports(args) -> list:
    reports = []
    suites = ("classes", "density", "mersenne", "white") if args.suite == "all" else (args.suite,)
    c = density.as_exact(args.c)
    for suite in suites:
        if suite == "classes":
            limit = args.limit or (1 << (args.kmax + 1))
            table = atlas.build_sieve(limit)
            reports.append(atlas.verify_class_structure(table, args.kmax, conjecture_scan=True))
        elif suite == "density":
            limit = args.limit or 100_000
            reports.append(density.verify_density_claims(c, limit))
            reports.append(density.progression_closure_report(c, limit))
        elif suite == "mersenne":
            limit = args.limit or (1 << min(args.kmax, 22))
            table = atlas.build_sieve(limit)
            pair = mersenne.MersennePair(2, 3)
            reports.append(mersenne.verify_bound_chain(pair, 2, args.kmax, table))
        elif suite == "white":
            reports.append(core.verify_white_behavior())
    return reports


def cmd_verify(args) -> int:
    reports = _verify_reports(args)
    if args.json:
        _print_json([r.to_dict() for r in reports])
    else:
        for r in reports:
            print(r.summary())
    return 0 if all(r.ok for r in reports) else 1


def _ratio_fields(row) -> tuple:
    if row.ratio is None:
        return None, None
    return f"{row.ratio.numerator}/{row.ratio.denominator}", f"{float(row.ratio):.6f}"


def cmd_density(args) -> int:
    if not args.xs and not args.witness:
        raise ValueError("nothing to do: pass --xs and/or --witness")
    frac = density.as_exact(args.c)
    rows = None
    if args.xs:
        xs = [int(part) for part in args.xs.split(",") if part.strip()]
        rows = density.density_table(frac, xs)
    witness = None
    if args.witness:
        witness = density.t_witness(frac, args.search_cap)
    if args.format == "json":
        payload = {"c": str(frac)}
        if rows is not None:
            payload["rows"] = []
            for r in rows:
                fracstr, dec = _ratio_fields(r)
                payload["rows"].append(
                    {
                        "x": r.x,
                        "b_c": r.b_c,
                        "pi": r.pi_x,
                        "ratio": None if fracstr is None else {"fraction": fracstr, "decimal": dec},
                    }
                )
        if args.witness:
            payload["witness"] = witness
        _print_json(payload)
    else:
        w = csv.writer(sys.stdout)
        if rows is not None:
            w.writerow(["x", "b_c", "pi", "ratio_fraction", "ratio_decimal"])
            for r in rows:
                fracstr, dec = _ratio_fields(r)
                w.writerow([r.x, r.b_c, r.pi_x, fracstr or "", dec or ""])
        if args.witness:
            print(f"witness={witness if witness is not None else 'NONE'}")
    if args.witness and witness is None:
        return 1
    return 0


def cmd_bound(args) -> int:
    pair = mersenne.MersennePair(args.p, args.q)
    table = None
    if args.sieve:
        table = sievefile.load_sieve(args.sieve)
    elif args.limit:
        table = atlas.build_sieve(args.limit)
    rep = mersenne.bound_report(args.k, pair, table)
    _print_json(rep.to_dict())
    return 0 if rep.chain_verified else 1


def cmd_trajectory(args) -> int:
    rep = core.trajectory(args.n, args.fn, cap=args.cap)
    if args.format == "json":
        _print_json(
            {
                "start": rep.start,
                "fn": rep.fn_id,
                "iterates": rep.iterates,
                "collapsed": rep.collapsed,
                "collapse_value": rep.collapse_value,
                "iteration_length": rep.iteration_length,
                "reach_two_index": rep.reach_two_index,
            }
        )
    else:
        print(" ".join(str(v) for v in rep.iterates))
        if rep.collapsed:
            print(f"collapsed to {rep.collapse_value} (iteration length {rep.iteration_length})")
        else:
            print(f"no collapse within {args.cap} steps")
        if rep.reach_two_index is not None:
            print(f"reached 2 at step {rep.reach_two_index}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psibar",
        description="Iterated modified Dedekind psi: classes, densities, Mersenne bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate psibar/psi/phi/bigd/lambda at n or a range")
    p.add_argument("--fn", choices=sorted(_EVAL_FNS), required=True)
    p.add_argument("--n", required=True, help="integer or inclusive range 'lo..hi'")
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sieve", help="build a d-value table and write it to disk")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("classes", help="list class members with section labels")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sieve", help="load table from file instead of building")
    p.add_argument("--limit", type=int, help="build table to this limit")
    p.add_argument("--sections", action="store_true", help="show section labels (plain format)")
    p.add_argument("--extremes", action="store_true", help="show parity extremes (plain format)")
    p.add_argument("--largest-odd", action="store_true", dest="largest_odd")
    p.add_argument("--max-members", type=int, dest="max_members")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("verify", help="run executable verification suites")
    p.add_argument(
        "--suite", choices=("classes", "density", "mersenne", "white", "all"), required=True
    )
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--limit", type=int)
    p.add_argument("--c", default="0", help="exact rational, e.g. 0, -1/2, 0.25")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("density", help="qualifying-prime counts and the witness construction")
    p.add_argument("--c", required=True, help="exact rational, e.g. 0, -1/2, 0.25")
    p.add_argument("--xs", help="comma-separated ascending cutoffs")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--search-cap", type=int, default=1_000_000, dest="search_cap")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("bound", help="Mersenne witness lower-bound report")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sieve", help="table file for the largest-odd comparison")
    p.add_argument("--limit", type=int, help="build table to this limit instead")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("trajectory", help="print the iterate sequence of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fn", choices=core.FUNCTION_IDS, default=core.PSI_BAR)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_trajectory)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (CapacityError, MemoryError) as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except InternalInconsistencyError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except SieveFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
