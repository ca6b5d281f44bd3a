"""Command-line interface: one JSON document per run on stdout (or --json FILE).

Exit codes: 0 success, 2 verification mismatch, 3 invalid input,
4 zero-divisor splitting exceeded its budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .arith import GF, QQ, factor_int, to_fraction
from .ecring import CurveModel
from .errors import (
    BadDenominator,
    BadLambda,
    BadN,
    ConditionsFailed,
    SplitBudgetExceeded,
)
from .legendre import build_site, solvable_points, specialize_generic_point, ulmer_consistency, ulmer_point

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3, 4

# values printed in the worked example that reproduce compares against
EXAMPLE = {
    "lambda": 86,
    "n": 10,
    "norm_support": [7, 37, 1069, 10934266789, 3027381380137219],
    "p": 37,
    "q": 1069,
    "torsion": 8,
    "nontorsion_M": 16,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _lambda_echo(lam: Fraction) -> dict:
    out = {"value": str(lam)}
    if lam.denominator != 1:
        # kept as an exact fraction; primes of the denominator are excluded
        out["denominator"] = lam.denominator
        out["excluded_primes"] = [p for p, _ in factor_int(lam.denominator)]
    return out


def _parse_lambda(s: str) -> Fraction:
    try:
        return to_fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise BadLambda(f"cannot parse lambda {s!r}") from e


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _document(command: str, inputs: dict, results: dict, tower=None) -> dict:
    doc = {"command": command, "input": inputs}
    if tower is not None:
        doc["tower"] = {"description": tower.describe(), "rank": tower.rank, "depth": tower.depth}
    doc["results"] = results
    doc["version"] = __version__
    return doc


# -- commands -------------------------------------------------------------------


def cmd_construct(args):
    lam = _parse_lambda(args.lam)
    base = QQ if args.char is None else GF(args.char)
    if args.char is not None and lam.denominator % args.char == 0:
        raise BadDenominator(f"{args.char} divides the denominator of lambda")
    site = build_site(base, lam, args.n)
    res = site.residual()
    results = {
        "point": site.point.to_json(),
        "residual_zero": res.is_zero(),
        "identities_hold": site.identities_hold(),
        "rank": site.tower.rank,
    }
    ok = results["residual_zero"] and results["identities_hold"]
    inputs = {"lambda": _lambda_echo(lam), "n": args.n, "char": args.char or 0}
    return _document("construct", inputs, results, site.tower), EXIT_OK if ok else EXIT_MISMATCH


def cmd_certificate(args):
    from .certify import certify, search_primes

    lam = _parse_lambda(args.lam)
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise ValueError("--p and --q must be given together")
        p, q = args.p, args.q
    else:
        found = search_primes(lam, args.n, args.bound, threads=args.threads)
        if len(found) < 2:
            raise ConditionsFailed(None, f"fewer than two qualifying primes up to {args.bound}")
        p, q = found[0].p, found[1].p
    cert = certify(lam, args.n, p, q)
    doc = cert.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    inputs = {"lambda": _lambda_echo(lam), "n": args.n, "p": p, "q": q}
    return _document("certificate", inputs, {"certificate": doc, "out": args.out}), EXIT_OK


def cmd_verify_certificate(args):
    from .certify import verify_certificate

    try:
        with open(args.file) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"cannot read certificate: {e}") from e
    problems = verify_certificate(doc)
    results = {"verified": not problems, "problems": problems}
    return _document("verify-certificate", {"file": args.file}, results), EXIT_OK if not problems else EXIT_MISMATCH


def cmd_reproduce(args):
    from .certify import certify, check_prime, nontorsion_direct, norm_support, torsion_lower, torsion_upper

    ex = EXAMPLE
    lam, n = ex["lambda"], ex["n"]
    site = build_site(QQ, lam, n)
    items = {}

    def item(name, got, want):
        items[name] = {"computed": got, "expected": want, "match": got == want}

    item("residual_zero", site.residual().is_zero(), True)
    item("tower_rank", site.tower.rank, 2 * n)
    item("norm_support", norm_support(lam, n), ex["norm_support"])
    for p in (ex["p"], ex["q"]):
        item(f"qualifies_{p}", check_prime(lam, n, p).qualifies, True)
    try:
        certify(lam, n, ex["p"], ex["q"], site=site)
        issued = True
    except ConditionsFailed:
        issued = False
    item("certificate_issued", issued, True)
    if not args.skip_torsion:
        item("torsion_lower", torsion_lower(site).order, ex["torsion"])
        item("torsion_upper", torsion_upper(lam, n, 10).bound, ex["torsion"])
    item("nontorsion", nontorsion_direct(site, M=ex["nontorsion_M"]), True)
    ok = all(v["match"] for v in items.values())
    results = {"items": items, "all_match": ok}
    inputs = {"lambda": lam, "n": n, "skip_torsion": args.skip_torsion}
    return _document("reproduce", inputs, results, site.tower), EXIT_OK if ok else EXIT_MISMATCH


def cmd_ulmer(args):
    up = ulmer_point(args.p, args.f)
    spec = specialize_generic_point(args.p, args.f)
    results = {
        "n": up.n,
        "residual_zero": up.residual().is_zero(),
        "consistency": ulmer_consistency(args.p, args.f),
        "specialization_matches": spec.matches,
        "point": {"x": up.point.x.to_json(), "y": up.point.y.to_json()},
    }
    ok = results["residual_zero"] and results["consistency"] and results["specialization_matches"]
    return _document("ulmer", {"p": args.p, "f": args.f}, results), EXIT_OK if ok else EXIT_MISMATCH


def cmd_lift(args):
    from .padic import precision_compatible, reduce_mod_p, verify_lift

    lift = verify_lift(args.p, args.f, args.k)
    red = reduce_mod_p(args.p, args.f, args.k)
    results = {"lift": lift.to_json(), "reduction": red.to_json()}
    if args.k >= 2:
        results["precision_compatible"] = precision_compatible(args.p, args.f, args.k)
    ok = lift.residual_zero and red.matches and results.get("precision_compatible", True)
    inputs = {"p": args.p, "f": args.f, "k": args.k}
    return _document("lift", inputs, results), EXIT_OK if ok else EXIT_MISMATCH


def cmd_solvable(args):
    coeffs = [to_fraction(c) for c in (args.a2, args.a4, args.a6)]
    curve = CurveModel.general(*coeffs, QQ)
    res = solvable_points(curve, args.n, budget=args.budget)
    branches = []
    ok = bool(res.branches)
    for br in res.branches:
        err = None if br.error is None else f"{type(br.error).__name__}: {br.error}"
        entry = {"tower": br.tower.describe(), "rank": br.tower.rank, "error": err,
                 "points": len(br.points), "residuals_zero": br.residuals_zero, "distinct": br.distinct}
        if br.error is None:
            ok = ok and br.residuals_zero and br.distinct and len(br.points) >= 2 * args.n
        branches.append(entry)
    inputs = {"a2": str(coeffs[0]), "a4": str(coeffs[1]), "a6": str(coeffs[2]), "n": args.n}
    results = {"branches": branches, "total_points": len(res.points)}
    return _document("solvable", inputs, results), EXIT_OK if ok else EXIT_MISMATCH


def cmd_scan(args):
    from .certify import search_primes

    lam = _parse_lambda(args.lam)
    if args.n_max < 4:
        raise BadN("--n-max must be >= 4")
    table = []
    for n in range(4, args.n_max + 1, 2):
        primes = [r.p for r in search_primes(lam, n, args.bound, threads=args.threads)]
        table.append({"n": n, "qualifying": primes, "count": len(primes), "certifiable": len(primes) >= 2})
    inputs = {"lambda": _lambda_echo(lam), "n_max": args.n_max, "bound": args.bound}
    return _document("scan", inputs, {"table": table}), EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="FILE", help="write the run document here instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads for per-prime checks")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the document")

    parser = _Parser(prog="legendre-tower", description="Rational points on Legendre curves over radical towers.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="build the tower and check the point")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--char", type=int, help="work over F_p instead of Q")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certificate", parents=[common], help="issue an infinite-order certificate")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=2000, help="search bound when --p/--q are omitted")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--out", help="certificate file")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("verify-certificate", parents=[common], help="recheck a certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_certificate)

    p = sub.add_parser("reproduce", parents=[common], help="rerun the lambda = 86, n = 10 example")
    p.add_argument("--skip-torsion", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("ulmer", parents=[common], help="check the characteristic-p point")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.set_defaults(func=cmd_ulmer)

    p = sub.add_parser("lift", parents=[common], help="check the lifted point mod p^k")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--k", type=int, default=4)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("solvable", parents=[common], help="2n points on y^2 = x^3 + a2 x^2 + a4 x + a6")
    p.add_argument("--a2", default="0")
    p.add_argument("--a4", default="0")
    p.add_argument("--a6", default="0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=64, help="maximum number of zero-divisor splits")
    p.set_defaults(func=cmd_solvable)

    p = sub.add_parser("scan", parents=[common], help="qualifying primes for each even n")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--bound", type=int, default=5000)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        doc, code = args.func(args)
    except SplitBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ConditionsFailed as e:
        print(f"error: conditions failed: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, ArithmeticError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    if args.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    text = json.dumps(doc, indent=2, default=_jsonable) + "\n"
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
