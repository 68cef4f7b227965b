"""Command-line front end: ``analyze``, ``verify-local`` and ``catalog``.

Exit codes: 0 success, 1 a verification or mirror check failed, 2 bad input,
3 not convenient, 4 degenerate (or a failure caused by degeneracy under
``--force``), 5 resource or truncation limit.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .chart import ChartSpec, Truncation
from .errors import (ArityLimitExceeded, Degenerate, EmptyPolynomial, ExpressionSyntaxError,
                     IrrHodgeError, NotConvenient, ResourceLimit, TruncationOverflow,
                     UnknownCatalogEntry)
from .groebner import DEFAULT_BUDGET, ORDERS
from .hodge import CATALOG, mirror_check
from .laurent import format_laurent, infer_variables, parse_laurent
from .report import analyze, dumps
from .verify import DEFAULT_ALPHAS, run_local_suite

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_NOT_CONVENIENT, EXIT_DEGENERATE, EXIT_LIMIT = range(6)


def _rational_list(text: str) -> list:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _bounds(text: str) -> Truncation:
    vals = _int_list(text)
    if not 2 <= len(vals) <= 4:
        raise argparse.ArgumentTypeError("--bounds takes XMIN,VMAX[,OPMAX[,XMAX]]")
    keys = ("x_min", "v_max", "op_max", "x_max")
    try:
        return Truncation(**dict(zip(keys, vals)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irrhodge",
        description="Spectrum at infinity, irregular Hodge numbers and local V-filtration checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the full pipeline on a Laurent polynomial")
    an.add_argument("expr", nargs="?", help="inline expression, e.g. 'x + y + x^-1*y^-1'")
    an.add_argument("--file", help="read the expression from a file ('-' for stdin)")
    an.add_argument("--vars", help="comma-separated variable order (default: inferred)")
    fmt = an.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="plain text output")
    an.add_argument("--order", choices=ORDERS, default="grevlex")
    an.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Groebner step budget")
    an.add_argument("--force", action="store_true",
                    help="skip the non-degeneracy gate; the report is marked unverified")
    an.add_argument("--mirror", help="also compare with a catalog entry (P1, P2, P1xP1)")
    an.set_defaults(func=cmd_analyze, fmt="json")

    vl = sub.add_parser("verify-local", help="verify the normal-crossing chart identities")
    vl.add_argument("--ell", type=int, default=1)
    vl.add_argument("--e", type=_int_list, default=[2], help="multiplicities, e.g. 1,2")
    vl.add_argument("--alpha", type=_rational_list, default=list(DEFAULT_ALPHAS),
                    help="alphas in [0,1), e.g. 0,1/4,1/2")
    vl.add_argument("--p-max", type=int, default=2)
    vl.add_argument("--bounds", type=_bounds, default=Truncation(),
                    help="XMIN,VMAX[,OPMAX[,XMAX]]; write --bounds=-8,6 for negative XMIN")
    vl.add_argument("--trials", type=int, default=100)
    vl.add_argument("--seed", type=int, default=0)
    vl.add_argument("--json", action="store_true")
    vl.set_defaults(func=cmd_verify_local)

    cat = sub.add_parser("catalog", help="mirror check for the built-in toric catalog")
    cat.add_argument("--json", action="store_true")
    cat.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    cat.set_defaults(func=cmd_catalog)
    return parser


def _read_source(args) -> str:
    if args.file and args.expr:
        raise SystemExit("give either an expression or --file, not both")
    if args.file:
        if args.file == "-":
            return sys.stdin.read().strip()
        with open(args.file, encoding="utf-8") as fh:
            return fh.read().strip()
    if not args.expr:
        raise SystemExit("analyze needs an expression or --file")
    return args.expr


def cmd_analyze(args) -> int:
    source = _read_source(args)
    names = tuple(v.strip() for v in args.vars.split(",")) if args.vars else infer_variables(source)
    f = parse_laurent(source, names)
    report = analyze(f, source, names, order=args.order, budget=args.budget, force=args.force)
    payload = report.to_json()
    code = EXIT_OK
    if args.mirror:
        mc = mirror_check(report.hodge, args.mirror)
        payload["mirror"] = mc.to_json()
        code = EXIT_OK if mc.match else EXIT_FAILED
    if args.fmt == "text":
        text = report.to_text()
        if args.mirror:
            m = payload["mirror"]
            text += f"mirror {m['fano']}: {'match' if m['match'] else 'MISMATCH'} {m['expected']} vs {m['observed']}\n"
        sys.stdout.write(text)
    else:
        sys.stdout.write(dumps(payload))
    return code


def cmd_verify_local(args) -> int:
    e = list(args.e)
    if len(e) == 1 and args.ell > 1:
        e = e * args.ell
    if len(e) != args.ell:
        raise SystemExit(f"--e has {len(e)} entries but --ell is {args.ell}")
    if not 1 <= args.ell <= 2:
        raise SystemExit("verify-local supports ell = 1 or 2")
    if any(not 0 <= a < 1 for a in args.alpha):
        raise SystemExit("every --alpha must lie in [0, 1)")
    spec = ChartSpec(tuple(e), args.bounds)
    suites = run_local_suite(spec, args.alpha, args.p_max, args.trials, args.seed)
    ok = all(s.passed for s in suites)
    if args.json:
        sys.stdout.write(dumps({"e": e, "truncation": vars(args.bounds), "passed": ok,
                                "suites": [s.to_json() for s in suites]}))
    else:
        for s in suites:
            line = f"{'PASS' if s.passed else 'FAIL'} {s.name}: {s.cases} cases"
            if s.failures:
                line += f", {s.failures} failures; first: {s.example}"
            print(line)
        print(f"chart e={tuple(e)}: {'all identities pass' if ok else 'FAILURES'}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_catalog(args) -> int:
    rows = []
    for name, Y in CATALOG.items():
        f = Y.mirror()
        names = infer_variables(format_laurent(f))
        report = analyze(f, format_laurent(f), names, budget=args.budget)
        mc = mirror_check(report.hodge, name)
        rows.append({"fano": name, "mirror": format_laurent(f),
                     "spectrum": report.spectrum.to_json(), **mc.to_json()})
    ok = all(r["match"] for r in rows)
    if args.json:
        sys.stdout.write(dumps(rows))
    else:
        for r in rows:
            spec = ", ".join(f"{s['gamma']}^{s['delta']}" if s["delta"] > 1 else s["gamma"] for s in r["spectrum"])
            status = "match" if r["match"] else "MISMATCH"
            print(f"{r['fano']} <-> {r['mirror']}: {status} h = {tuple(r['expected'])}, spectrum {{{spec}}}")
    return EXIT_OK if ok else EXIT_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ExpressionSyntaxError, ArityLimitExceeded, UnknownCatalogEntry, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotConvenient, EmptyPolynomial) as exc:
        print(f"not convenient: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVENIENT
    except (ResourceLimit, TruncationOverflow) as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except Degenerate as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except IrrHodgeError as exc:
        # only reachable for inputs that escaped the hypothesis gate (--force)
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
