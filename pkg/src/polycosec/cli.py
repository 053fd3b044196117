"""Command line interface.

    polycosec table --family D --k -3 --n-max 10 --format json
    polycosec verify duality-D --n-max 10 --k-max 10
    polycosec gf --which 4G --deg 4
    polycosec selftest [--quick]

Exit status: 0 on success, 1 when a verification fails, 2 on bad usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import sys
import time
from pathlib import Path

from . import acceptance, cache
from . import polybernoulli as pb
from . import polycosecant as pc
from .powerseries import IndexVector
from .verification import Report, fmt

FAMILIES = ("D", "Dmulti", "B", "C")
CHECKS = ("duality-D", "duality-B", "duality-C", "routes-D", "gh", "f-constant", "multi-recurrence", "c-gf")
GF_WHICH = ("4G", "F", "f-closed", "f-def", "C-gf")
D_ROUTES = tuple(r.value for r in pc.DRoute)
PB_ROUTES = ("explicit", "series")

# options whose values may start with "-" (negative indices)
_SIGNED_OPTS = ("--k", "--k-range")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _k_range(text: str) -> range:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _join_signed(argv):
    """Rewrite ``--k -3`` as ``--k=-3`` so argparse does not read ``-3`` as a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _SIGNED_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-cache", action="store_true", help="do not read or write the table cache")
    common.add_argument("--cache-dir", help=f"cache directory (default: ${cache.CACHE_ENV} or ~/.cache/polycosec)")

    p = _Parser(prog="polycosec", description="Exact poly-cosecant and poly-Bernoulli numbers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", parents=[common], help="emit a table of values")
    t.add_argument("--family", required=True, help="one of " + ", ".join(FAMILIES))
    t.add_argument("--k", required=True, help="upper index; comma-separated vector for Dmulti")
    t.add_argument("--n-max", required=True, type=int)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--route", help="D: " + ", ".join(D_ROUTES) + "; B/C: " + ", ".join(PB_ROUTES))

    v = sub.add_parser("verify", parents=[common], help="check an identity over a grid")
    v.add_argument("check", help="one of " + ", ".join(CHECKS))
    v.add_argument("--n-max", type=_nonneg)
    v.add_argument("--k-max", type=_nonneg)
    v.add_argument("--k-range", type=_k_range)
    v.add_argument("--m-max", type=_nonneg)
    v.add_argument("--order", type=_nonneg)
    v.add_argument("--r-max", type=_nonneg, help="multi-recurrence: largest depth (vectors from {0,1,2}^r)")
    v.add_argument("--k", help="multi-recurrence: a single index vector instead of the default sweep")
    v.add_argument("--quiet", action="store_true", help="print only notes and the summary line")

    g = sub.add_parser("gf", parents=[common], help="print a generating-function coefficient grid")
    g.add_argument("--which", required=True, help="one of " + ", ".join(GF_WHICH))
    g.add_argument("--deg", required=True, type=_nonneg, help="largest x-degree (and y-degree unless --deg-y)")
    g.add_argument("--deg-y", type=_nonneg)
    g.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("selftest", parents=[common], help="run every acceptance criterion")
    s.add_argument("--quick", action="store_true", help="reduced bounds")

    c = sub.add_parser("cache", parents=[common], help="inspect, build or clear the table cache")
    c.add_argument("action", choices=("info", "build", "clear"))
    c.add_argument("--max-index", type=_nonneg, default=60, help="build: table size")
    return p


# -- table -----------------------------------------------------------------


def _table(args):
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r} (expected one of {', '.join(FAMILIES)})")
    if args.n_max < 0:
        raise UsageError(f"--n-max must be >= 0, got {args.n_max}")
    try:
        k = IndexVector.parse(args.k)
    except (ValueError, TypeError):
        raise UsageError(f"invalid --k {args.k!r}") from None
    if args.family != "Dmulti" and len(k) != 1:
        raise UsageError(f"family {args.family} takes a single index, got {args.k!r}")

    if args.family == "D":
        route = args.route or "recurrence"
        if route not in D_ROUTES:
            raise UsageError(f"unknown route {route!r} for D")
        table = pc.d_table(k[0], args.n_max, route)
    elif args.family == "Dmulti":
        if args.route not in (None, "definition_series"):
            raise UsageError("Dmulti only supports route definition_series")
        table = pc.d_multi_via_series(k, args.n_max)
    else:
        route = args.route or "explicit"
        if route not in PB_ROUTES:
            raise UsageError(f"unknown route {route!r} for {args.family}")
        table = pb.pb_table(args.family, k[0], args.n_max, route)

    records = [(n, fmt(table[n]), table.route(n)) for n in range(args.n_max + 1)]
    if args.format == "json":
        doc = {
            "family": args.family,
            "indices": list(k),
            "values": [{"n": n, "value": v, "route": r} for n, v, r in records],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("n", "value", "route"))
        w.writerows(records)
        sys.stdout.write(buf.getvalue())
    return 0


# -- verify ----------------------------------------------------------------


def _or(value, default):
    return default if value is None else value


def _verify(args):
    check = args.check
    if check not in CHECKS:
        raise UsageError(f"unknown check {check!r} (expected one of {', '.join(CHECKS)})")
    if check == "duality-D":
        rep = pc.duality_report(_or(args.n_max, 10), _or(args.k_max, 10))
    elif check in ("duality-B", "duality-C"):
        rep = pb.pb_duality_report(check[-1], _or(args.n_max, 11), _or(args.k_max, 11))
    elif check == "routes-D":
        rep = pc.routes_report(_or(args.k_range, range(-8, 9)), _or(args.n_max, 30))
    elif check == "gh":
        rep = pc.gh_crosscheck(_or(args.m_max, 8), _or(args.order, 20))
    elif check == "f-constant":
        rep, _ = pc.f_constant_report(_or(args.order, 20))
    elif check == "c-gf":
        rep = pb.c_gf_check(_or(args.order, 8))
    else:
        n_max = _or(args.n_max, 16)
        if args.k:
            try:
                vectors = [IndexVector.parse(args.k)]
            except (ValueError, TypeError):
                raise UsageError(f"invalid --k {args.k!r}") from None
        else:
            vectors = [v for r in range(1, _or(args.r_max, 3) + 1) for v in itertools.product(range(3), repeat=r)]
        rep = Report("multi-recurrence")
        for vec in vectors:
            rep.extend(pc.d_multi_recurrence_check(vec, n_max))
    for line in rep.lines(verbose=not args.quiet):
        print(line)
    return 0 if rep.passed else 1


# -- gf ----------------------------------------------------------------------


def _gf(args):
    if args.which not in GF_WHICH:
        raise UsageError(f"unknown generating function {args.which!r} (expected one of {', '.join(GF_WHICH)})")
    ox = args.deg
    oy = _or(args.deg_y, args.deg)
    if args.which == "4G":
        series = pc.big_g(ox, oy).scale(4)
    elif args.which == "F":
        series = pc.f_cap(ox, oy)
    elif args.which == "f-closed":
        series = pc.f_bivariate_closed(ox, oy)
    elif args.which == "f-def":
        series = pc.f_bivariate_definitional(ox, oy)
    else:
        series = pb.c_generating_function(ox, oy)
    grid = [[fmt(v) for v in row] for row in series.egf_grid()]
    if args.format == "json":
        doc = {"which": args.which, "basis": "x^a/a! y^b/b!", "deg_x": ox, "deg_y": oy, "grid": grid}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a"] + [f"b={b}" for b in range(oy + 1)])
        for a, row in enumerate(grid):
            w.writerow([a] + row)
        sys.stdout.write(buf.getvalue())
    return 0


# -- selftest / cache ---------------------------------------------------------


def _selftest(args):
    start = time.perf_counter()
    ok = True
    for crit in acceptance.CRITERIA:
        outcome = acceptance.run(crit, quick=args.quick)
        print(outcome.line(), flush=True)
        for note in outcome.report.notes:
            print(f"    note: {note}")
        for cell in outcome.report.failures[:10]:
            print(f"    FAIL {cell.label}  {cell.detail}")
        ok &= outcome.passed
    total = time.perf_counter() - start
    in_budget = total < acceptance.SELFTEST_BUDGET
    ok &= in_budget
    print(f"total {total:.2f}s / {acceptance.SELFTEST_BUDGET:.0f}s")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cache_cmd(args, path):
    from .combinatorics import get_table, reset_tables

    if args.action == "clear":
        reset_tables()
        if path is not None and path.exists():
            path.unlink()
            print(f"removed {path}")
        return 0
    if args.action == "build":
        for kind in cache.CACHED_KINDS:
            get_table(kind).ensure(args.max_index)
    print(f"cache file: {path if path is not None else '(disabled)'}")
    for kind in cache.CACHED_KINDS:
        print(f"{kind}: max_index {get_table(kind).max_index}")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(_join_signed(sys.argv[1:] if argv is None else argv))

    path = None
    if not args.no_cache:
        path = (Path(args.cache_dir) if args.cache_dir else cache.default_cache_dir()) / cache.CACHE_FILE
        if not (args.command == "cache" and args.action == "clear"):
            cache.load(path)

    handlers = {"table": _table, "verify": _verify, "gf": _gf, "selftest": _selftest}
    try:
        if args.command == "cache":
            code = _cache_cmd(args, path)
            if args.action == "clear":
                return code
        else:
            code = handlers[args.command](args)
    except UsageError as exc:
        print(f"polycosec: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"polycosec: error: {exc}", file=sys.stderr)
        return 2

    if path is not None:
        try:
            cache.save(path)
        except OSError as exc:
            logging.getLogger(__name__).warning("could not write cache %s: %s", path, exc)
    return code


if __name__ == "__main__":
    sys.exit(main())
