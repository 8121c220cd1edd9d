"""Command-line interface.

Verbs: ``zfr`` (zero-free-region widths), ``dh`` (repulsion solvers),
``zd`` (zero-density bounds), ``table`` (bundled datasets and regression),
``optimize`` (parameter search), ``verify`` (oracle property suites).

Exit codes: 0 success, 1 computation error (no provable bound, failed
preconditions), 2 usage error.  All numeric output uses 6 significant digits
unless ``--precision`` overrides it; ``--json`` output is schema-stable.
Runs are deterministic: byte-identical output for identical invocations.
"""

import argparse
import json
import math
import sys

from . import dh, optimizer, tables, trial_functions, verify, zero_density, zfr
from ._kernels import backend
from .errors import HeckeZerosError

_FORMATS = ("text", "md", "csv", "json")


def _fmt(x, precision):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.{precision}g}"
    return str(x)


def _parse_params(text):
    out = {}
    if not text:
        return out
    for item in text.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        key, _, val = item.partition("=")
        if not _:
            raise ValueError(f"malformed parameter {item!r}; expected key=value")
        out[key.strip()] = float(val.strip())
    return out


def _read_family_file(path):
    name, params = None, {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "family":
                name = val
            else:
                params[key] = float(val)
    if name is None:
        raise ValueError(f"family file {path} does not set 'family'")
    return name, params


def _family_from_args(args):
    if getattr(args, "family_file", None):
        name, params = _read_family_file(args.family_file)
    else:
        name = args.family
        params = _parse_params(getattr(args, "params", None))
    return trial_functions.build_family(name, **params)


def _emit(payload, lines, args):
    """payload -> stdout as json, or the prepared text lines otherwise."""
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _cmd_zfr(args):
    p = args.precision
    if args.case == "order5":
        val = zfr.zfr_order5(phi=args.phi)
        _emit({"case": "order5", "lambda1": val},
              [f"zfr order5: lambda_1 >= {_fmt(val, p)}"], args)
        return 0
    if args.case == "order-ge6":
        f = _family_from_args(args)
        res = zfr.zfr_order_ge6(f, phi=args.phi)
        _emit({"case": "order-ge6", "lambda1": res.lambda1, "approximate": True,
               "lambda_star": res.lam, "family": f.params},
              [str(res)], args)
        return 0
    if args.optimize:
        lam_opt, l1 = zfr.zfr_optimize(args.case, phi=args.phi)
        res = zfr.zfr_solve(args.case, lam_opt, phi=args.phi)
        _emit({"case": args.case, "lambda_opt": lam_opt, "lambda1": res.lambda1,
               "side_ok": res.side_ok, "side_limited": res.side_limited},
              [f"zfr {args.case}: best lambda = {_fmt(lam_opt, p)}", str(res)], args)
        return 0
    if args.lam is None:
        raise HeckeZerosError(f"zfr {args.case} needs --lambda (or --optimize)")
    res = zfr.zfr_solve(args.case, args.lam, phi=args.phi)
    line = (f"zfr {args.case}: lambda = {_fmt(res.lam, p)} -> lambda_1 >= "
            f"{_fmt(res.lambda1, p)} (side condition "
            f"{'OK' if res.side_ok else 'FAILED'})"
            + (" [side-condition limited]" if res.side_limited else ""))
    _emit({"case": args.case, "lambda": res.lam, "lambda1": res.lambda1,
           "side_ok": res.side_ok, "side_limited": res.side_limited,
           "root": res.root, "residual": res.residual},
          [line], args)
    return 0


def _cmd_dh(args):
    p = args.precision
    case = dh.get_case(args.case)
    if case.method == "poly":
        if args.lam is None or args.J is None:
            raise HeckeZerosError(f"polynomial case {case.name} needs --lambda and --J")
        res = dh.solve_poly(case, args.b, args.lam, args.J, phi=args.phi)
    else:
        f = _family_from_args(args)
        res = dh.solve_smoothed(case, f, args.b, phi=args.phi)
    line = (f"{res.case}: b={_fmt(res.b, p)} -> lambda* = "
            f"{_fmt(res.lambda_star, p)} (residual {res.residual:.1e})"
            + (" [side-condition limited]" if res.side_limited else ""))
    _emit({"case": res.case, "b": res.b, "lambda_star": res.lambda_star,
           "params": res.params, "side_ok": res.side_ok,
           "side_limited": res.side_limited, "residual": res.residual},
          [line,
           "  parameters: " + ", ".join(f"{k}={_fmt(v, p)}" for k, v in res.params.items())],
          args)
    return 0


def _cmd_zd(args):
    p = args.precision
    if args.optimize:
        n, params = optimizer.optimize_zd(args.lam, args.b, vartheta=args.vartheta,
                                          phi=args.phi, budget=args.budget)
        if math.isinf(n):
            _emit({"lambda": args.lam, "b": args.b, "n": "inf"},
                  [f"zd lambda={_fmt(args.lam, p)} b={_fmt(args.b, p)}: "
                   "no admissible weight found (preconditions fail)"], args)
            return 1
        _emit({"lambda": args.lam, "b": args.b, "n": n, "params": params},
              [f"zd lambda={_fmt(args.lam, p)} b={_fmt(args.b, p)}: N <= {n} "
               f"(bound {_fmt(params['bound'], p)}, optimized substitute weight)"],
              args)
        return 0
    f = _family_from_args(args)
    q = zero_density.ZdQuery(f, args.lam, args.b, args.vartheta, args.phi)
    c1, c2 = zero_density.zd_preconditions(q)
    bound = zero_density.n_lambda_bound(q)
    n = zero_density.n_lambda_int(q)
    _emit({"lambda": args.lam, "b": args.b, "vartheta": args.vartheta,
           "cond1": c1, "cond2": c2, "bound": bound, "n": n},
          [f"zd lambda={_fmt(args.lam, p)} b={_fmt(args.b, p)}: "
           f"N <= {n} (bound {_fmt(bound, p)}; preconditions {c1}, {c2})"], args)
    return 0


def _cmd_table(args):
    p = args.precision
    if args.regress:
        rep = tables.regress(args.regress, tolerance=args.tolerance,
                             budget=args.budget)
        lines = [rep.summary()]
        for row in rep.rows:
            if not row.in_band or row.note:
                lines.append(f"  b={_fmt(row.b, p)}: listed {_fmt(row.listed, p)} "
                             f"computed {_fmt(row.computed, p)} "
                             f"{'ok' if row.in_band else 'FLAG'} {row.note}")
        _emit(tables.report_to_dict(rep), lines, args)
        return 0 if rep.passed else 1
    if args.name is None:
        lines = ["bundled tables:"]
        for entry in tables.manifest():
            key = entry["id"] if entry["variant"] is None else f"{entry['id']}:{entry['variant']}"
            lines.append(f"  {key:26s} [{entry['method']}] {entry['caption']}")
        _emit({"tables": tables.available_tables()}, lines, args)
        return 0
    t = tables.load_table(args.name)
    if args.format == "json":
        print(tables.to_json(t))
    elif args.format == "csv":
        sys.stdout.write(tables.to_csv(t))
    else:
        print(tables.to_markdown(t))
    return 0


def _cmd_optimize(args):
    p = args.precision
    spec = optimizer.SearchSpec(args.case, args.b, max_evals=args.budget,
                                phi=args.phi)
    res = optimizer.maximize_bound(spec)
    _emit({"case": res.case, "b": res.b, "lambda_star": res.lambda_star,
           "params": res.params, "side_limited": res.side_limited},
          [str(res),
           "  parameters: " + ", ".join(f"{k}={_fmt(v, p)}" for k, v in res.params.items())],
          args)
    return 0


def _cmd_verify(args):
    reports = verify.run_suite(args.suite)
    failures = [r for r in reports if not r.passed]
    lines = [f"verification backend: {backend()}"]
    lines += [str(r) for r in (reports if args.verbose else failures)]
    lines.append(f"{len(reports) - len(failures)}/{len(reports)} checks pass")
    _emit({"suite": args.suite, "backend": backend(),
           "n_checks": len(reports), "n_failures": len(failures),
           "failures": [str(r) for r in failures]}, lines, args)
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--precision", type=int, default=6,
                     help="significant digits for numeric output (default 6)")
    sub.add_argument("--format", choices=_FORMATS, default="text")
    sub.add_argument("--json", dest="format", action="store_const", const="json",
                     help="shorthand for --format json")
    sub.add_argument("--csv", dest="format", action="store_const", const="csv",
                     help="shorthand for --format csv")
    sub.add_argument("--phi", type=float, default=dh.PHI,
                     help="critical-strip growth constant (default 1/4)")


def _add_family(sub):
    sub.add_argument("--family", default="triangle",
                     help="trial weight family (triangle | autocorrelation)")
    sub.add_argument("--params", default="",
                     help="family parameters, e.g. 'x0=2' or 'alpha=0.5,s=1.2'")
    sub.add_argument("--family-file", default=None,
                     help="key=value text file defining the family")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="heckezeros",
        description="Explicit numerics for low-lying zeros of Hecke L-functions")
    sp = ap.add_subparsers(dest="verb", required=True)

    z = sp.add_parser("zfr", help="zero-free-region width by character order")
    z.add_argument("--case", required=True,
                   choices=("order-ge6", "order5", "order234", "principal"))
    z.add_argument("--lambda", dest="lam", type=float, default=None)
    z.add_argument("--optimize", action="store_true")
    _add_family(z)
    _add_common(z)
    z.set_defaults(fn=_cmd_zfr)

    d = sp.add_parser("dh", help="zero-repulsion bound for one case")
    d.add_argument("--case", required=True, choices=sorted(dh.CASES))
    d.add_argument("--b", type=float, required=True,
                   help="assumed upper bound on the exceptional width")
    d.add_argument("--lambda", dest="lam", type=float, default=None)
    d.add_argument("--J", type=float, default=None)
    _add_family(d)
    _add_common(d)
    d.set_defaults(fn=_cmd_dh)

    y = sp.add_parser("zd", help="zero-density bound N(lambda)")
    y.add_argument("--lambda", dest="lam", type=float, required=True)
    y.add_argument("--b", type=float, default=0.0)
    y.add_argument("--vartheta", type=float, default=0.75)
    y.add_argument("--optimize", action="store_true",
                   help="optimize the substitute weight family")
    y.add_argument("--budget", type=int, default=300)
    _add_family(y)
    _add_common(y)
    y.set_defaults(fn=_cmd_zd)

    t = sp.add_parser("table", help="bundled reference tables")
    t.add_argument("--name", default=None, help="table key, e.g. T4 or T2:quadratic")
    t.add_argument("--regress", default=None, metavar="NAME",
                   help="recompute a table and report deviations")
    t.add_argument("--tolerance", type=float, default=2e-4)
    t.add_argument("--budget", type=int, default=120)
    _add_common(t)
    t.set_defaults(fn=_cmd_table)

    o = sp.add_parser("optimize", help="parameter search for a repulsion case")
    o.add_argument("--case", required=True, choices=sorted(dh.CASES))
    o.add_argument("--b", type=float, required=True)
    o.add_argument("--budget", type=int, default=6000)
    _add_common(o)
    o.set_defaults(fn=_cmd_optimize)

    v = sp.add_parser("verify", help="run oracle-backed property suites")
    v.add_argument("--suite", default="all",
                   choices=sorted(verify.SUITES) + ["all"])
    v.add_argument("--verbose", action="store_true", help="print passing checks too")
    _add_common(v)
    v.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except HeckeZerosError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
