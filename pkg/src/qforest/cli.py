"""Command line entry point: ``qforest <subcommand> ...``.

Every run prints one JSON report (or CSV with --csv).  Exit codes: 0 on
success, 1 when ``verify`` finds a failing criterion, 2 on usage errors, 3
when the work budget refuses a run, 4 for a formula evaluated outside its
stated range.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import formulas as F
from .counting import (count_support_invertible, count_support_symmetric, count_zero_set,
                       fano_pattern, isotropic_count, ordered_basis_count, parse_pattern,
                       rank_profile, sym_rank_census)
from .fit import (FitError, interpolate, integer_coeff_check, polynomiality_probe,
                  quasipoly_probe, read_points_csv)
from .gf import FieldError, field_of_order
from .graph import GraphError, parse_family, parse_graph
from .matroid import MatroidError, build_matroid, count_g_matroid
from .shard import BudgetExceeded, default_workers
from .verify import DEFAULT_SEED, verify_suite

EXIT_USAGE, EXIT_BUDGET, EXIT_BOUNDARY, EXIT_FAILED = 2, 3, 4, 1


class UsageError(ValueError):
    pass


def _field(args):
    return field_of_order(args.q)


def _graph(args):
    if bool(args.graph) == bool(args.family):
        raise UsageError("give exactly one of --graph FILE or --family NAME:PARAMS")
    if args.graph:
        return parse_graph(Path(args.graph).read_text())
    return parse_family(args.family)


def _shard(text):
    if text is None:
        return None, None
    try:
        i, n = (int(x) for x in text.split("/"))
    except ValueError:
        raise UsageError("--shard takes i/N, e.g. 0/4") from None
    if not 0 <= i < n:
        raise UsageError("--shard i/N needs 0 <= i < N")
    return i, n


def _edge_list(text):
    if not text:
        return ()
    return tuple(int(x) for x in text.split(",") if x.strip())


# -- subcommands -------------------------------------------------------------
# Each returns (parameters, results, algorithm, shards) for the report.

def cmd_count(args):
    G = _graph(args)
    ctx = _field(args)
    shard, shards = _shard(args.shard)
    value = count_zero_set(G, (), args.kind, "at_least", ctx, root=args.root,
                           workers=args.threads, shards=shards, shard=shard, force=args.force)
    algo = "det L0 batch elimination" if args.kind == "g" else "P_G monomial evaluation"
    params = {"kind": args.kind, "graph": G.to_text(), "q": ctx.q, "shard": args.shard}
    return params, {"count": value}, algo, shards or args.threads


def cmd_zeroset(args):
    G = _graph(args)
    ctx = _field(args)
    S = _edge_list(args.zero_set)
    value = count_zero_set(G, S, args.kind, args.mode, ctx, root=args.root,
                           workers=args.threads, force=args.force)
    algo = "inclusion-exclusion over supersets" if args.mode == "exact" else "restricted enumeration"
    params = {"kind": args.kind, "mode": args.mode, "zero_set": list(S), "q": ctx.q}
    return params, {"count": value}, algo, args.threads


def cmd_rank_profile(args):
    G = _graph(args)
    ctx = _field(args)
    prof = rank_profile(G, ctx, root=args.root, workers=args.threads, force=args.force)
    return {"graph": G.to_text(), "q": ctx.q, "root": args.root}, \
        {"profile": prof.counts}, "batched rank of L0", args.threads


def cmd_support(args):
    if bool(args.pattern) == bool(args.fano):
        raise UsageError("give exactly one of --pattern FILE or --fano")
    S = fano_pattern() if args.fano else parse_pattern(Path(args.pattern).read_text(), args.symmetric)
    ctx = _field(args)
    if args.symmetric:
        if args.fano:
            raise UsageError("the Fano support is not symmetric")
        value = count_support_symmetric(S, ctx, workers=args.threads, force=args.force)
        algo = "symmetric enumeration"
    else:
        value = count_support_invertible(S, ctx, algo=args.algo, workers=args.threads, force=args.force)
        algo = args.algo
    return {"pattern": S.to_rows(), "q": ctx.q, "symmetric": args.symmetric}, \
        {"count": value}, algo, args.threads


def cmd_sym_census(args):
    ctx = _field(args)
    prof = sym_rank_census(args.n, ctx, workers=args.threads, force=args.force)
    return {"n": args.n, "q": ctx.q}, {"profile": prof.counts}, "symmetric enumeration", args.threads


def cmd_matroid(args):
    M = build_matroid(args.matroid)
    ctx = _field(args)
    value = count_g_matroid(M, ctx, method=args.method, workers=args.threads, force=args.force)
    params = {"matroid": args.matroid, "ground_size": M.ground_size, "rank": M.rank,
              "bases": len(M.bases), "q": ctx.q}
    return params, {"count": value}, args.method, args.threads


def cmd_formula(args):
    params = {k: getattr(args, k) for k in ("n", "k", "s", "r", "q") if getattr(args, k) is not None}
    if args.name == "conjecture-knk" and (args.verbatim or args.strict):
        for p in ("n", "k", "q"):
            if p not in params:
                raise UsageError(f"conjecture-knk needs --{p}")
        value = F.conjecture_knk(params["n"], params["k"], params["q"],
                                 verbatim=args.verbatim, strict=args.strict)
        return {**params, "verbatim": args.verbatim, "strict": args.strict}, \
            {"value": value}, args.name, 1
    res = F.evaluate(args.name, **params)
    return res.params, {"value": res.value}, args.name, 1


def cmd_fit(args):
    pts = read_points_csv(Path(args.values))
    params = {"values": args.values, "mode": args.mode, "points": len(pts)}
    if args.mode == "interpolate":
        poly = interpolate(pts)
        out = {"polynomial": str(poly), "coefficients": list(poly.coeffs),
               "integer_coefficients": integer_coeff_check(poly)}
    elif args.mode == "poly":
        params["degree_bound"] = args.degree_bound
        res = polynomiality_probe(pts, args.degree_bound)
        if res.is_polynomial:
            out = {"verdict": "polynomial", "polynomial": str(res.polynomial),
                   "coefficients": list(res.polynomial.coeffs),
                   "integer_coefficients": integer_coeff_check(res.polynomial)}
        else:
            out = {"verdict": "not_polynomial", "witness": list(res.witness)}
    else:
        params.update(degree_bound=args.degree_bound, max_modulus=args.max_modulus)
        qp = quasipoly_probe(pts, args.max_modulus, args.degree_bound)
        if qp is None:
            out = {"verdict": "none"}
        else:
            out = {"verdict": "quasipolynomial", "modulus": qp.modulus,
                   "branches": {str(r): str(p) for r, p in sorted(qp.branches.items())}}
    return params, out, f"exact Lagrange ({args.mode})", 1


def cmd_bases(args):
    G = _graph(args)
    ctx = _field(args)
    value = ordered_basis_count(G, args.form, ctx, force=args.force)
    return {"graph": G.to_text(), "form": args.form, "q": ctx.q}, {"count": value}, \
        "ordered basis enumeration", 1


def cmd_isotropic(args):
    ctx = _field(args)
    value = isotropic_count(args.n, args.form, ctx, force=args.force)
    return {"n": args.n, "form": args.form, "q": ctx.q}, {"count": value}, "vector enumeration", 1


def cmd_verify(args):
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = verify_suite(args.level, seed=args.seed, only=only)
    rows = [{"criterion": r.number, "title": r.title, "passed": r.passed, "expected": r.expected,
             "actual": r.actual, "seconds": round(r.seconds, 3), "notes": r.notes} for r in results]
    out = {"passed": all(r.passed for r in results), "criteria": rows}
    return {"level": args.level, "seed": args.seed}, out, "acceptance battery", 1


# -- output ------------------------------------------------------------------

def _stringify(x):
    """Exact integers and fractions become decimal strings."""
    if isinstance(x, bool) or x is None or isinstance(x, float):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {k: _stringify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_stringify(v) for v in x]
    return str(x)


def _to_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "profile" in results:
        w.writerow(["r", "count"])
        w.writerows(enumerate(results["profile"]))
    elif "coefficients" in results:
        w.writerow(["degree", "coefficient"])
        w.writerows((i, str(c)) for i, c in enumerate(results["coefficients"]))
    elif "criteria" in results:
        w.writerow(["criterion", "passed", "seconds", "expected", "actual"])
        w.writerows((r["criterion"], r["passed"], r["seconds"], r["expected"], r["actual"])
                    for r in results["criteria"])
    else:
        w.writerow(["name", "value"])
        w.writerows((k, v) for k, v in results.items() if not isinstance(v, (dict, list)))
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $QFOREST_THREADS, else CPU count)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for randomized checks (default {DEFAULT_SEED})")
    common.add_argument("--csv", action="store_true", help="print tabular results as CSV")
    common.add_argument("--force", action="store_true", help="run even above the work budget")

    p = argparse.ArgumentParser(prog="qforest", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp):
        sp.add_argument("--graph", help="graph file (first line n, then one 'u v' edge per line)")
        sp.add_argument("--family", help="named family, e.g. cycle:4 or complete-minus-clique:6,3")
        sp.add_argument("--q", required=True, help="field order, e.g. 9 or 3^2")
        sp.add_argument("--root", type=int, default=None, help="deleted row/column (default n)")

    sp = sub.add_parser("count", parents=[common], help="g_G(q) or f_G(q)")
    graph_args(sp)
    sp.add_argument("--kind", choices=("g", "f"), default="g")
    sp.add_argument("--shard", help="run only block i of N, given as i/N (0-based)")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("zeroset", parents=[common], help="counts with prescribed zero edges")
    graph_args(sp)
    sp.add_argument("--kind", choices=("g", "f"), default="g")
    sp.add_argument("--zero-set", default="", help="comma-separated 1-based edge indices")
    sp.add_argument("--mode", choices=("at_least", "exact"), default="at_least")
    sp.set_defaults(func=cmd_zeroset)

    sp = sub.add_parser("rank-profile", parents=[common], help="assignments of L0 by rank")
    graph_args(sp)
    sp.set_defaults(func=cmd_rank_profile)

    sp = sub.add_parser("support", parents=[common], help="invertible matrices on a support")
    sp.add_argument("--pattern", help="pattern file: n, then n rows of 0/1")
    sp.add_argument("--fano", action="store_true", help="use the Fano incidence support")
    sp.add_argument("--q", required=True)
    sp.add_argument("--algo", choices=("brute", "span-dp"), default="brute")
    sp.add_argument("--symmetric", action="store_true", help="count symmetric matrices")
    sp.set_defaults(func=cmd_support)

    sp = sub.add_parser("sym-census", parents=[common], help="symmetric matrices by rank")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp.set_defaults(func=cmd_sym_census)

    sp = sub.add_parser("matroid", parents=[common], help="g_M(q) for a matroid")
    sp.add_argument("--matroid", required=True, help="u24, r10, uniform:r,n or a basis file")
    sp.add_argument("--q", required=True)
    sp.add_argument("--method", choices=("brute", "eliminate"), default="brute")
    sp.set_defaults(func=cmd_matroid)

    sp = sub.add_parser("formula", parents=[common], help="evaluate a closed form")
    sp.add_argument("--name", required=True, choices=sorted(F.FORMULAS))
    for name in ("n", "k", "s", "r", "q"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--verbatim", action="store_true",
                    help="conjecture-knk: use the leading exponent exactly as printed")
    sp.add_argument("--strict", action="store_true",
                    help="conjecture-knk: refuse points where some exponent is negative")
    sp.set_defaults(func=cmd_formula)

    sp = sub.add_parser("fit", parents=[common], help="fit a q,count CSV")
    sp.add_argument("--values", required=True, help='CSV with header "q,count"')
    sp.add_argument("--mode", choices=("interpolate", "poly", "quasi"), default="poly")
    sp.add_argument("--degree-bound", type=int, default=4)
    sp.add_argument("--max-modulus", type=int, default=4)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("bases", parents=[common], help="ordered bases for an apex graph")
    graph_args(sp)
    sp.add_argument("--form", choices=("plus", "minus"), default="plus")
    sp.set_defaults(func=cmd_bases)

    sp = sub.add_parser("isotropic", parents=[common], help="isotropic vectors")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--form", choices=("plus", "minus"), default="plus")
    sp.set_defaults(func=cmd_isotropic)

    sp = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = default_workers()
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    t0 = time.perf_counter()
    try:
        params, results, algo, shards = args.func(args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "message": str(exc), "estimate": str(exc.estimate)}),
              file=sys.stderr)
        return EXIT_BUDGET
    except F.BoundaryAmbiguous as exc:
        print(json.dumps({"error": "boundary-ambiguous", "message": str(exc)}), file=sys.stderr)
        return EXIT_BOUNDARY
    except (UsageError, GraphError, FieldError, FitError, MatroidError, F.FormulaError,
            ValueError, OSError) as exc:
        print(f"qforest {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": ["qforest"] + argv,
        "parameters": _stringify(params),
        "results": _stringify(results),
        "algorithm": algo,
        "shards": shards,
        "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
    }
    if args.csv:
        sys.stdout.write(_to_csv(report["results"]))
    else:
        print(json.dumps(report, indent=2))
    if args.command == "verify" and not results["passed"]:
        return EXIT_FAILED
    return 0


if __name__ == "__main__":
    sys.exit(main())
