"""Command-line interface: ``gfc <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 resource budget exceeded,
4 verification failure.  Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .complex import DEFAULT_BUDGET, AlgebraVariant, BudgetExceeded, build_slice
from .genfun import (SeriesBudgetExceeded, complex_euler_series, perchik_full_series,
                     perchik_series, stabilization_report)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _degree_line(d: dict[int, int]) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(d.items()) if v)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _slice(args):
    return build_slice(AlgebraVariant.parse(args.algebra), args.weight,
                       args.max_degree, args.budget_dim)


def cmd_dims(args) -> tuple[str, int]:
    sl = _slice(args)
    if args.format == "json":
        return json.dumps(sl.to_json(with_coboundaries=False), indent=2), EXIT_OK
    if args.format == "csv":
        rows = [["degree", "profile", "dim"]]
        for d in range(sl.max_degree + 1):
            rows += [[d, str(p), n] for p, n in sl.profile_dims(d)]
        return _csv(rows), EXIT_OK
    return _degree_line(sl.dims()), EXIT_OK


def cmd_cohomology(args) -> tuple[str, int]:
    sl = _slice(args)
    h = sl.cohomology_dims()
    if args.format == "json":
        doc = {"variant": sl.variant.value, "weight": sl.weight,
               "cohomology": [{"degree": d, "dim": n} for d, n in sorted(h.items())],
               "euler_characteristic": sl.euler_characteristic()}
        return json.dumps(doc, indent=2), EXIT_OK
    if args.format == "csv":
        return _csv([["degree", "dim"]] + [[d, n] for d, n in sorted(h.items())]), EXIT_OK
    return _degree_line(h), EXIT_OK


def cmd_matrix(args) -> tuple[str, int]:
    sl = _slice(args)
    if not 0 <= args.degree < sl.max_degree:
        raise UsageError(f"--degree must lie in 0..{sl.max_degree - 1}")
    m = sl.coboundary(args.degree)
    text = m.to_text().rstrip("\n")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        return f"wrote {m.rows}x{m.cols} matrix to {args.output}", EXIT_OK
    return text, EXIT_OK


def cmd_factorize(args) -> tuple[str, int]:
    from .characteristic import factorization_report, metoki_experiment
    if args.metoki:
        rep = metoki_experiment(args.budget_dim)
        if args.format == "json":
            return json.dumps(rep, indent=2), EXIT_OK
        return "\n".join([
            f"H*(ham0)_16: {_degree_line(rep['source']['cohomology'])}",
            f"H*(ham)_14: {_degree_line(rep['target']['cohomology'])}",
            f"images_closed={str(rep['images_closed']).lower()}",
            f"images_nonzero_in_cohomology={str(rep['images_nonzero_in_cohomology']).lower()}",
            f"factors_through_omega={str(rep['factors_through_omega']).lower()}",
        ]), EXIT_OK
    rep = factorization_report()
    code = EXIT_OK if all(rep["checks"].values()) else EXIT_VERIFY
    if args.format == "json":
        return json.dumps(rep, indent=2), code
    if args.format == "csv":
        return _csv([["check", "passed"]] + [[k, str(v).lower()] for k, v in rep["checks"].items()]), code
    lines = [f"eta: degree {rep['eta']['degree']}, weight {rep['eta']['weight']}, "
             f"support {', '.join(rep['eta']['support_profiles'])}"]
    lines += [f"  ({c['profile']})_{c['index']}: {c['value']}" for c in rep["eta"]["coefficients"]]
    lines.append(f"gkf = eta ^ omega: degree {rep['gkf']['degree']}, weight {rep['gkf']['weight']}")
    lines.append(f"gamma1 ^ omega / p1 = {rep['gamma1_omega_over_p1']}")
    if rep["obstruction"]:
        lines.append(f"obstruction: {rep['obstruction']}")
    lines += [f"{k}={str(v).lower()}" for k, v in rep["checks"].items()]
    return "\n".join(lines), code


def cmd_euler(args) -> tuple[str, int]:
    variant = AlgebraVariant.parse(args.algebra)
    full = variant is AlgebraVariant.HAM
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.method in ("complex", "both") and args.n != 1:
        raise UsageError("the complex-side series is only available for n = 1")
    lo = -2 * args.n if full else 0
    if args.tmax < lo:
        raise UsageError(f"--tmax must be at least {lo}")
    series, match, stab = {}, None, None
    if args.method in ("product", "both"):
        fn = perchik_full_series if full else perchik_series
        series["product"] = fn(args.n, args.tmax)
    if args.method in ("complex", "both"):
        series["complex"] = complex_euler_series(variant, args.tmax)
    if args.method == "both":
        match = series["product"] == series["complex"]
    if args.method == "product" and args.n >= 2 and not full:
        stab = stabilization_report(args.n, args.tmax)
    code = EXIT_VERIFY if match is False else EXIT_OK
    if args.format == "json":
        doc = {"n": args.n, "algebra": variant.value,
               "series": {k: s.to_json() for k, s in series.items()}}
        if match is not None:
            doc["match"] = match
        if stab is not None:
            doc["stabilization"] = stab["rows"]
        return json.dumps(doc, indent=2), code
    if args.format == "csv":
        rows = [["method", "exp", "value"]]
        for k, s in series.items():
            rows += [[k, c["exp"], c["value"]] for c in s.to_json()["coefficients"]]
        return _csv(rows), code
    lines = []
    for k, s in series.items():
        lines.append(s.to_text() if len(series) == 1 else f"{k}: {s.to_text()}")
    if match is not None:
        lines.append(f"match={str(match).lower()}")
    if stab is not None:
        for row in stab["rows"]:
            vals = " ".join(f"n={n}:{v}" for n, v in zip(stab["n"], row["values"]))
            extra = f" c_t={row['c_t']}" if "c_t" in row else ""
            lines.append(f"t^{row['exp']}: {vals} stable={str(row['stable']).lower()}{extra}")
    return "\n".join(lines), code


def cmd_verify(args) -> tuple[str, int]:
    from .verify import run_suite
    reports = run_suite(args.suite)
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY
    if args.format == "json":
        docs = []
        for r in reports:
            d = r.to_json()
            if not args.timings:
                d.pop("elapsed")
            docs.append(d)
        return json.dumps(docs, indent=2, default=str), code
    if args.format == "csv":
        rows = [["name", "provenance", "passed", "expected", "computed"]]
        rows += [[r.name, r.provenance, str(r.passed).lower(), r.expected, r.computed] for r in reports]
        return _csv(rows), code
    lines = [r.line() + (f" ({r.elapsed:.2f}s)" if args.timings else "") for r in reports]
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return "\n".join(lines), code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--budget-dim", type=int, default=DEFAULT_BUDGET, metavar="N",
                        help="largest wedge-monomial space a slice may enumerate")

    def slice_args(p):
        p.add_argument("--algebra", choices=("ham", "ham0"), required=True)
        p.add_argument("--weight", type=int, required=True)
        p.add_argument("--max-degree", type=int, default=None)

    parser = argparse.ArgumentParser(prog="gfc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[common], help="cochain dimensions per degree")
    slice_args(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("cohomology", parents=[common], help="Betti numbers per degree")
    slice_args(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("matrix", parents=[common], help="export a coboundary matrix")
    slice_args(p)
    p.add_argument("--degree", type=int, required=True, help="source degree of the coboundary")
    p.add_argument("--output", default=None, help="write to this file instead of stdout")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("factorize", parents=[common], help="eta ^ omega factorization report")
    p.add_argument("--metoki", action="store_true",
                   help="run the long weight-16 -> 14 experiment instead (many minutes)")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("euler", parents=[common], help="Euler characteristic series")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--tmax", type=int, required=True)
    p.add_argument("--method", choices=("product", "complex", "both"), default="product")
    p.add_argument("--algebra", choices=("ham", "ham0"), default="ham0")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=("tables", "gkf", "main-theorem", "genfun", "all"),
                   default="all")
    p.add_argument("--timings", action="store_true", help="include elapsed times")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    if getattr(args, "budget_dim", 1) < 1:
        print("error: --budget-dim must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        out, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, SeriesBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
