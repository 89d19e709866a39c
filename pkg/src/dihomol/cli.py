"""Command line front end.

    dihomol hdneg --preset sphere2 --field Q --range -14 0
    dihomol check --algebra my_algebra.json
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .complexes import WindowError, homology
from .cyclicbar import FinitenessError, hochschild_window, identity_suite
from .dga import (AlgebraError, AlgebraValidationError, ParseError, checked, load,
                  preset_from_token, validate)
from .equivariant import WINDOW_BUILDERS
from .fields import QQ, FieldError, field_from_token
from .spectral import e1_page, e2_page

THEORY_COMMANDS = {"hh": "HH", "hc": "HC", "hcneg": "HC-", "hd": "HD", "hdneg": "HD-",
                   "hrneg": "HR-"}
ORBIT = ("hc", "hd")


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dihomol",
        description="Exact Hochschild, cyclic and dihedral homology of involutive dgas.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, window=True):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", help="point, sphere2, truncpoly-2-4, noncomm, ...")
        src.add_argument("--algebra", metavar="FILE", help="algebra JSON file")
        p.add_argument("--field", help="Q or F<p>; overrides the field of an algebra file")
        p.add_argument("--max-bar-length", type=int, metavar="N",
                       help="truncate bar words (and orbit weights) at N")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        if window:
            p.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"),
                           help="homological degrees to report (default -10 0, or 0 10 for hc/hd)")
            p.add_argument("--dump", metavar="PATH", help="write the assembled complex as JSON")

    helps = {"hh": "Hochschild homology", "hc": "cyclic homology (orbits)",
             "hcneg": "negative cyclic homology", "hd": "dihedral homology (orbits)",
             "hdneg": "negative dihedral homology", "hrneg": "negative reflexive homology"}
    for name, h in helps.items():
        common(sub.add_parser(name, help=h))
    common(sub.add_parser("ss", help="E1 and E2 of the u-filtration on the negative cyclic complex"))
    common(sub.add_parser("check", help="validate the involutive dga axioms"), window=False)
    ident = sub.add_parser("identities", help="run the cyclic/dihedral operator identity suite")
    common(ident, window=False)
    ident.add_argument("--max-n", type=int, default=4, help="largest simplicial degree (default 4)")
    ident.add_argument("--trials", type=int, default=5000,
                       help="words per degree before sampling kicks in")
    ident.add_argument("--seed", type=int, default=0)
    return ap


def _algebra(args):
    field = None
    if args.field is not None:
        field = field_from_token(args.field)
    if args.preset is not None:
        return preset_from_token(args.preset, field or QQ)
    try:
        alg = load(args.algebra)
    except OSError as exc:
        raise UsageError(f"cannot read {args.algebra}: {exc.strerror}") from None
    if field is not None and field != alg.field:
        alg = checked(alg.with_field(field))
    return alg


def _window(args):
    if args.range is None:
        lo, hi = (0, 10) if args.command in ORBIT else (-10, 0)
    else:
        lo, hi = args.range
    if lo > hi:
        raise UsageError(f"--range {lo} {hi}: LO must not exceed HI")
    return lo, hi


def _run_theory(args, alg, out):
    lo, hi = _window(args)
    theory = THEORY_COMMANDS[args.command]
    if theory == "HH":
        win = hochschild_window(alg, lo - 1, hi + 1, max_bar_length=args.max_bar_length)
    else:
        win = WINDOW_BUILDERS[theory](alg, lo - 1, hi + 1, args.max_bar_length)
    bad = win.d_squared_failures()
    if bad:
        raise ArithmeticError(f"d² != 0 in degrees {bad}")
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump(win.to_json(), fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    table = homology(win)
    table.notes = [n for n in table.notes if not n.startswith("edge degrees")]
    if args.format == "csv":
        out.write(table.to_csv())
    elif args.format == "json":
        doc = table.to_json()
        doc["algebra"] = alg.label
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(f"algebra: {alg.label}\n")
        out.write(table.to_text())
    return 0


def _run_ss(args, alg, out):
    lo, hi = _window(args)
    e1 = e1_page(alg, lo - 1, hi + 1, args.max_bar_length)
    e2 = e2_page(alg, lo - 1, hi + 1, args.max_bar_length, e1=e1)
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump({"E1": e1.to_json(), "E2": e2.to_json()}, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    if args.format == "json":
        out.write(json.dumps({"schema": "dihomol/1", "algebra": alg.label, "E1": e1.to_json(),
                              "E2": e2.to_json()}, indent=2, ensure_ascii=False) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u_power", "hh_degree", "total_degree", "E1", "E2"])
        for (q, j) in sorted(e2.cells, key=lambda t: (-t[1], t[0])):
            w.writerow([q, j, j - 2 * q, e1.cells[(q, j)], e2.cells[(q, j)]])
        out.write(buf.getvalue())
    else:
        out.write(f"algebra: {alg.label}\n")
        out.write(e1.to_text())
        out.write(e2.to_text())
        for (q, j) in sorted(e2.generators, key=lambda t: (-t[1], t[0])):
            for g in e2.generators[(q, j)]:
                out.write(f"  E2 class at (q={q}, j={j}): {g}\n")
    return 0


def _run_check(args, out):
    try:
        alg = _algebra(args)
    except AlgebraValidationError as exc:
        report = exc.report
    else:
        report = validate(alg)
    if args.format == "json":
        out.write(json.dumps({"schema": "dihomol/1", "ok": report.ok,
                              "failures": [list(f) for f in report.failures]}, indent=2,
                             ensure_ascii=False) + "\n")
    else:
        out.write(report.render() + "\n")
    return 0 if report.ok else 1


def _run_identities(args, alg, out):
    rep = identity_suite(alg, args.max_n, args.trials, args.seed)
    if args.format == "json":
        out.write(json.dumps({
            "schema": "dihomol/1", "algebra": rep.algebra, "field": rep.field,
            "convention": rep.convention, "n_max": rep.n_max, "ok": rep.ok,
            "results": [{"identity": r.name, "space": r.space, "checked": r.checked,
                         "failures": r.failures[:20]} for r in rep.results]},
            indent=2, ensure_ascii=False) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity", "space", "checked", "failures"])
        for r in rep.results:
            w.writerow([r.name, r.space, r.checked, len(r.failures)])
        out.write(buf.getvalue())
    else:
        out.write(rep.render() + "\n")
    return 0 if rep.ok else 1


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "check":
            return _run_check(args, out)
        alg = _algebra(args)
        if args.command == "identities":
            return _run_identities(args, alg, out)
        if args.command == "ss":
            return _run_ss(args, alg, out)
        return _run_theory(args, alg, out)
    except AlgebraValidationError as exc:
        err.write(f"dihomol: invalid algebra: {exc.report.failures[0][0]}: "
                  f"{exc.report.failures[0][1]} (run 'dihomol check' for the full report)\n")
        return 1
    except ParseError as exc:
        err.write(f"dihomol: {exc}\n")
        return 2
    except FinitenessError as exc:
        err.write(f"dihomol: {exc}\n")
        return 2
    except (UsageError, WindowError, FieldError, AlgebraError) as exc:
        err.write(f"dihomol: {exc}\n")
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
