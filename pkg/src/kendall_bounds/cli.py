"""Command-line front end.

Subcommands: ``bound`` (one (n, dmin) record), ``table`` (all dmin rows for
one n), ``ccstats`` (class counts), ``verify`` (explicit dual-feasibility
certificate).  Data goes to stdout, diagnostics to stderr as JSON.  Exit
codes: 0 success, 2 cap/parameter violation, 3 solver diagnostic failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cache import Cache
from .classes import SubgroupKind, class_decomposition, symmetrized_count
from .errors import ResourceCapError, SolverDiagnosticError
from .lp_bound import (
    BoundReport,
    build_instance,
    floor_with_guard,
    lp_bound,
    reconstruct_dual,
    solve_instance,
    spread_to_length_classes,
    verify_dual_feasible,
)
from .metrics import hamming_bound, singleton_bound
from .sdp import SDP_CAP, solve_dual_sdp
from .search import SEARCH_CAP, max_code

EXIT_OK = 0
EXIT_CAP = 2
EXIT_SOLVER = 3

METHOD_ORDER = ("lp", "sb", "hb", "sdp", "search")

CCSTATS_CAP = 10
CCSTATS_HARD_CAP = 11
VERIFY_CLI_CAP = 6


def _parse_methods(spec: str) -> tuple[str, ...]:
    methods = tuple(m.strip() for m in spec.split(",") if m.strip())
    bad = [m for m in methods if m not in METHOD_ORDER]
    if bad:
        raise ValueError(f"unknown methods: {', '.join(bad)}")
    # keep canonical column order regardless of how they were listed
    return tuple(m for m in METHOD_ORDER if m in methods)


def compute_report(n, dmin, methods, *, cache=None, allow_large=False) -> BoundReport:
    report = BoundReport(n=n, dmin=dmin)
    if "lp" in methods:
        lp_report = lp_bound(n, dmin, allow_large=allow_large, cache=cache)
        report.lp_raw = lp_report.lp_raw
        report.lp_bound = lp_report.lp_bound
    if "sb" in methods:
        report.sb = singleton_bound(n, dmin)
    if "hb" in methods:
        report.hb = hamming_bound(n, dmin)
    if "sdp" in methods:
        if n > SDP_CAP:
            raise ResourceCapError(f"sdp method capped at n={SDP_CAP}")
        result = solve_dual_sdp(n, dmin)
        report.sdp_raw = result.value
        report.sdp_value = floor_with_guard(result.value)
    if "search" in methods:
        if n > SEARCH_CAP:
            raise ResourceCapError(f"search method capped at n={SEARCH_CAP}")
        result = max_code(n, dmin)
        report.search_value = result.size
        report.search_exact = result.exact
    return report


def _report_record(report: BoundReport, methods) -> dict:
    record = {"n": report.n, "dmin": report.dmin}
    values = {"lp": report.lp_bound, "sb": report.sb, "hb": report.hb,
              "sdp": report.sdp_value, "search": report.search_value}
    for name in METHOD_ORDER:
        if name in methods:
            record[name] = values[name]
    return record


def _emit_records(records, methods, fmt, out) -> None:
    if fmt == "json":
        for record in records:
            out.write(json.dumps(record) + "\n")
    else:
        columns = list(records[0].keys()) if records else []
        out.write(",".join(columns) + "\n")
        for record in records:
            out.write(",".join(str(record[c]) for c in columns) + "\n")


def cmd_bound(args, out=sys.stdout) -> int:
    methods = _parse_methods(args.methods)
    cache = Cache(args.cache_dir)
    report = compute_report(args.n, args.dmin, methods,
                            cache=cache, allow_large=args.unsafe_allow_large)
    _emit_records([_report_record(report, methods)], methods, args.format, out)
    return EXIT_OK


def cmd_table(args, out=sys.stdout) -> int:
    methods = _parse_methods(args.methods)
    cache = Cache(args.cache_dir)
    records = []
    for dmin in range(1, args.n * (args.n - 1) // 2 + 1):
        report = compute_report(args.n, dmin, methods,
                                cache=cache, allow_large=args.unsafe_allow_large)
        record = _report_record(report, methods)
        del record["n"]
        records.append(record)
    if args.format == "json":
        _emit_records(records, methods, "json", out)
    else:
        columns = ["dmin"] + [m for m in METHOD_ORDER if m in methods]
        out.write(",".join(columns) + "\n")
        for record in records:
            out.write(",".join(str(record[c]) for c in columns) + "\n")
    return EXIT_OK


def cmd_ccstats(args, out=sys.stdout) -> int:
    n = args.n
    cap = CCSTATS_HARD_CAP if args.unsafe_allow_large else CCSTATS_CAP
    if n > cap:
        raise ResourceCapError(f"ccstats capped at n={cap}")
    cache = Cache(args.cache_dir)
    full = class_decomposition(n, SubgroupKind.FULL)
    psi = class_decomposition(n, SubgroupKind.PSI,
                              allow_large=args.unsafe_allow_large, cache=cache)
    theta = class_decomposition(n, SubgroupKind.THETA,
                                allow_large=args.unsafe_allow_large, cache=cache)
    record = {
        "n": n,
        "conj": full.num_classes,
        "len": symmetrized_count(psi),
        "theta_sym": symmetrized_count(theta),
    }
    out.write(json.dumps(record) + "\n")
    return EXIT_OK


def cmd_verify(args, out=sys.stdout) -> int:
    n, dmin = args.n, args.dmin
    if n > VERIFY_CLI_CAP:
        raise ResourceCapError(f"verify capped at n={VERIFY_CLI_CAP}")
    cache = Cache(args.cache_dir)
    inst = build_instance(n, dmin, cache=cache)
    solution = solve_instance(inst)
    z = reconstruct_dual(inst, solution.values)
    b, psi_syms = spread_to_length_classes(inst, z, cache=cache)
    min_eig = verify_dual_feasible(n, dmin, b, cache=cache)

    import math
    threshold = -1e-6 * math.factorial(n)
    sign_violation = 0.0
    for j, sym in enumerate(psi_syms):
        if j > 0 and sym.delta >= dmin:
            sign_violation = max(sign_violation, float(b[j]))
    record = {
        "n": n,
        "dmin": dmin,
        "b1": float(b[0]),
        "lp_bound": floor_with_guard(solution.objective_value),
        "min_eigenvalue": min_eig,
        "threshold": threshold,
        "max_sign_violation": sign_violation,
        "feasible": bool(min_eig >= threshold and sign_violation <= 1e-9),
    }
    out.write(json.dumps(record) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kendall-bounds",
        description="Upper bounds on permutation code sizes under the Kendall tau metric")
    parser.add_argument("--cache-dir", default=None,
                        help=f"cache directory (default: $KENDALL_BOUNDS_CACHE or ./.kb-cache)")
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="bounds for one (n, dmin)")
    bound.add_argument("--n", type=int, required=True)
    bound.add_argument("--dmin", type=int, required=True)
    bound.add_argument("--methods", default="lp,sb,hb")
    bound.add_argument("--format", choices=("json", "csv"), default="json")
    bound.add_argument("--unsafe-allow-large", action="store_true")
    bound.set_defaults(func=cmd_bound)

    table = sub.add_parser("table", help="bounds for every dmin at one n")
    table.add_argument("--n", type=int, required=True)
    table.add_argument("--methods", default="lp,sb,hb")
    table.add_argument("--format", choices=("json", "csv"), default="csv")
    table.add_argument("--unsafe-allow-large", action="store_true")
    table.set_defaults(func=cmd_table)

    ccstats = sub.add_parser("ccstats", help="class counts for one n")
    ccstats.add_argument("--n", type=int, required=True)
    ccstats.add_argument("--unsafe-allow-large", action="store_true")
    ccstats.set_defaults(func=cmd_ccstats)

    verify = sub.add_parser("verify", help="explicit dual-feasibility certificate")
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--dmin", type=int, required=True)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        json.dump({"error": str(exc), "code": EXIT_CAP}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_CAP
    except ValueError as exc:
        json.dump({"error": str(exc), "code": EXIT_CAP}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_CAP
    except SolverDiagnosticError as exc:
        json.dump({"error": str(exc), "code": EXIT_SOLVER, "payload": exc.payload},
                  sys.stderr, default=str)
        sys.stderr.write("\n")
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
