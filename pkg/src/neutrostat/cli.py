"""Command line front end.

Every subcommand prints one report (JSON by default) and exits with 0 on
success, 2 on a domain error and 64 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import enum
import json
import math
import sys

from . import __version__
from . import descriptive as ds
from . import distributions as dist
from . import inference as inf
from . import neutro_num as nn
from . import randgen as rg
from . import regression as reg
from . import setval as sv
from .errors import NeutroStatError
from .notes import Note

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- serialization


def _number_formatter(digits: int):
    def fmt(x: float) -> str:
        x = float(x)
        if x == 0:
            return "0"
        return sv.format_number(float(f"{x:.{digits}g}"))

    return fmt


def _jsonable(obj, digits: int):
    fmt = _number_formatter(digits)
    if isinstance(obj, sv.SetValue):
        return sv.format_setvalue(obj, fmt)
    if isinstance(obj, nn.NeutroNumber):
        return nn.format_nn(obj, fmt)
    if isinstance(obj, nn.NeutroComplex):
        return nn.format_ncomplex(obj, fmt)
    if isinstance(obj, nn.Factoring):
        return [_jsonable(x, digits) for x in (obj.leading, obj.root1, obj.root2)]
    if isinstance(obj, complex):
        return nn.format_ncomplex(nn.NeutroComplex(obj.real, obj.imag), fmt)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, Note):
        return _jsonable(obj.as_dict(), digits)
    if isinstance(obj, (rg.Value, rg.Indet)):
        return str(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: _jsonable(getattr(obj, f.name), digits) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, digits) for v in obj]
    return str(obj)


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else k, obj[k], out)
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    elif isinstance(obj, list):
        out.append((prefix, " ".join(json.dumps(v) if not isinstance(v, str) else v for v in obj)))
    else:
        out.append((prefix, obj if isinstance(obj, str) else json.dumps(obj)))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    rows: list = []
    _flatten("", report, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


# ---------------------------------------------------------------- input helpers


def _read_observations(args) -> list:
    if getattr(args, "data", None):
        return sv.parse_many(args.data)
    if getattr(args, "file", None):
        with open(args.file) as fh:
            lines = [ln.strip() for ln in fh]
        return [sv.parse_setvalue(ln) for ln in lines if ln and not ln.startswith("#")]
    if getattr(args, "csv", None):
        if not args.column:
            raise UsageError("--csv needs --column")
        return [sv.parse_setvalue(v) for v in _csv_column(args.csv, args.column)]
    raise UsageError("give observations with --data, --file or --csv")


def _csv_column(path: str, column: str) -> list[str]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if column not in (reader.fieldnames or []):
            raise UsageError(f"column {column!r} not in {path}")
        return [row[column].strip() for row in reader if row[column].strip()]


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.replace(",", " ").split()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


# ---------------------------------------------------------------- commands


def cmd_describe(args):
    if args.nn:
        obs = [nn.parse_nn(t) for t in args.data.split()] if args.data else []
        if not obs:
            raise UsageError("--nn needs --data")
        return {"n": len(obs), "mean": ds.mean_nn(obs), "median": ds.median_nn(obs),
                "variance": ds.variance_nn(obs), "stddev": ds.stddev_nn(obs)}, []
    obs = _read_observations(args)
    res = {"n": len(obs), "mean": ds.mean_set(obs), "median": ds.median_set(obs),
           "stddev": ds.stddev_set(obs), "sorted": sv.sorted_sets(obs)}
    if len(obs) >= 3:
        res["quartiles"] = list(ds.quartiles(obs))
    return res, []


def cmd_quartiles(args):
    obs = _read_observations(args)
    q1, q2, q3 = ds.quartiles(obs, method=args.method)
    return {"n": len(obs), "method": args.method, "Q1": q1, "Q2": q2, "Q3": q3,
            "sorted": sv.sorted_sets(obs)}, []


def _freq_rows(args) -> list:
    if args.rows:
        rows = []
        for token in sv.split_tokens(args.rows):
            cat, _, freq = token.partition(":")
            if not _:
                raise UsageError(f"row {token!r} should look like category:frequency")
            rows.append((cat, sv.parse_setvalue(freq)))
        return rows
    if args.csv:
        with open(args.csv, newline="") as fh:
            return [(r[0].strip(), sv.parse_setvalue(r[1])) for r in csv.reader(fh) if r and r[0].strip()]
    raise UsageError("give rows with --rows or --csv")


def cmd_freq(args):
    rows = _freq_rows(args)
    table = ds.freq_table(rows)
    naive = ds.naive_rel_freq(rows)
    out_rows = [
        {"category": r.category, "frequency": r.frequency, "rel_freq": r.rel_freq, "naive_rel_freq": q}
        for r, q in zip(table.rows, naive)
    ]
    if args.plot:
        from .plotting import export_histogram_svg

        export_histogram_svg([(i, i + 1, r.frequency) for i, r in enumerate(table.rows)], args.plot,
                             xlabel="category")
    return {"rows": out_rows, "total": {"frequency": table.total.frequency,
                                        "rel_freq": table.total.rel_freq}}, []


def cmd_wrongobs(args):
    obs = _floats(args.data)
    weights = _floats(args.weights) if args.weights else None
    res = ds.wrong_obs_enumerate(obs, args.k, weights)
    return {"samples": list(res.samples), "interval_style": res.combined.interval_style,
            "average_style": res.combined.average_style,
            "weighted_style": res.combined.weighted_style}, []


def cmd_binom(args):
    spec = dist.BinomialSpec(args.n, args.th, args.ps, args.pi, args.pf)
    res = {"mode": dist.classify_mode(args.ps, args.pi, args.pf), "total": spec.total}
    if args.x is not None:
        t = dist.nbinomial_pmf(spec, args.x)
        res.update({"x": args.x, **t.as_dict(), "normalized": dist.normalize_triplet(t).as_dict()})
    else:
        res["table"] = dist.nbinomial_table(spec)
    return res, []


def cmd_multinom(args):
    spec = dist.MultinomialSpec(args.n, args.th, tuple(_floats(args.p)), args.i)
    t = dist.nmultinomial_pmf(spec, _ints(args.x))
    return {"x": _ints(args.x), **t.as_dict(), "total": spec.total,
            "normalized": dist.normalize_triplet(t).as_dict()}, []


def cmd_normal(args):
    spec = dist.NormalSpec(sv.parse_setvalue(args.mu), sv.parse_setvalue(args.sigma))
    res = {"bands": {str(k): dist.nnormal_sigma_band(spec, k) for k in range(1, args.k + 1)}}
    if args.x is not None:
        res["pdf"] = dist.nnormal_pdf(spec, args.x)
    return res, []


def _points(args) -> list:
    if args.x and args.y:
        xs, ys = sv.parse_many(args.x), sv.parse_many(args.y)
    elif args.csv:
        xs = [sv.parse_setvalue(v) for v in _csv_column(args.csv, args.xcol)]
        ys = [sv.parse_setvalue(v) for v in _csv_column(args.csv, args.ycol)]
    else:
        raise UsageError("give points with --x and --y, or --csv with --xcol/--ycol")
    if len(xs) != len(ys):
        raise UsageError(f"{len(xs)} x values but {len(ys)} y values")
    return [reg.SetPoint(x, y) for x, y in zip(xs, ys)]


def cmd_fit(args):
    pts = _points(args)
    m = reg.ls_fit(pts)
    to = reg.nss_to(pts)
    resid_mid = reg.nss_resid_midpoint(pts, m)
    warnings = []
    res = {
        "a": m.intercept_a,
        "b": m.slope_b,
        "sums": m.sums.as_dict(),
        "predicted": [reg.predict(m, p.x) for p in pts],
        "residuals": reg.residuals(pts, m),
        "coverage": reg.coverage_check(pts, m),
        "midpoints": [list(r) for r in reg.midpoint_report(pts, m)],
        "nss_resid_midpoint": resid_mid,
        "nss_resid_set": reg.nss_resid_set(pts, m),
        "nss_to": to,
        "deneutrosified": list(reg.deneutrosify(m)),
        "scatter": [ob.kind for ob in reg.scatter_objects(pts)],
    }
    if to.inf <= 0 <= to.sup:
        warnings.append(Note("DegenerateTotal", "total sum of squares contains 0; r squared skipped"))
    else:
        r2 = reg.r_squared(resid_mid, to)
        res["r_squared"] = {"raw": r2.raw, "clipped": r2.clipped}
        warnings.extend(r2.notes)
    try:
        r = reg.correlation(pts)
        res["correlation"] = {"raw": r.raw, "clipped": r.clipped}
        warnings.extend(r.notes)
    except NeutroStatError as e:
        warnings.append(Note(e.code, str(e)))
    if args.plot:
        from .plotting import export_scatter_svg

        export_scatter_svg(pts, args.plot, model=m)
    return res, warnings


def _sv(text):
    return sv.parse_setvalue(text)


def cmd_test(args):
    z = inf.z_test_stat(_sv(args.xbar), _sv(args.null), _sv(args.s), _sv(args.n))
    alt = inf.Alternative.parse(args.alt)
    pval = inf.p_value(z, alt)
    res = {"statistic": z, "alternative": alt, "pvalue": pval}
    if args.alpha is not None:
        alpha = _sv(args.alpha)
        d = inf.p_decision(pval, alpha)
        res.update({"alpha": alpha, **d.as_dict()})
    if args.level is not None:
        crit = inf.z_crit(args.level, tails=2 if alt is inf.Alternative.OUTSIDE else 1)
        res["critical"] = crit
        res["z_decision"] = inf.z_decision(z, alt, crit).as_dict()
    return res, []


def cmd_ci(args):
    if args.kind == "mean-z":
        ci = inf.ci_mean_z(_sv(args.xbar), _sv(args.s), _sv(args.n), args.level, known_sigma=args.known_sigma)
    elif args.kind == "mean-t":
        ci = inf.ci_mean_t(_sv(args.xbar), _sv(args.s), _sv(args.n), args.level)
    else:
        ci = inf.ci_proportion(_sv(args.p), _sv(args.n), args.level)
    return {"interval": ci.interval, "margin": ci.margin, "critical": ci.critical,
            "checks": ci.checks}, list(ci.notes)


def cmd_samplesize(args):
    warnings = []
    if args.kind == "mean":
        if args.sigma:
            sigma = _sv(args.sigma)
        elif args.range_high and args.range_low:
            sigma = inf.range_sigma_estimate(_sv(args.range_high), _sv(args.range_low))
            if sigma.inf <= 0:
                warnings.append(Note("DegenerateRange", "estimated sigma reaches 0", {"sigma": str(sigma)}))
        else:
            raise UsageError("give --sigma or --range-high/--range-low")
        res = inf.sample_size_mean(sigma, args.B, args.level)
        out = {"sigma": sigma}
    else:
        pi = _sv(args.pi) if args.pi else sv.Crisp(0.5)
        res = inf.sample_size_proportion(pi, args.B, args.level)
        out = {"pi": pi}
    out.update({"n_set": res.n_set, "n_final": res.n_final})
    return out, warnings + list(res.notes)


def cmd_randgen(args):
    if args.mode == "uniform":
        values = _floats(args.values) if args.values else list(range(10))
        seq = rg.uniform_sequence(values, args.indets, args.len, args.seed)
    elif args.mode == "weighted":
        if not args.weights:
            raise UsageError("weighted mode needs --weights like '1:0.5 2:0.3 I1:0.2'")
        vals, ind = [], []
        for token in args.weights.split():
            sym, _, w = token.partition(":")
            if sym.startswith("I"):
                ind.append((int(sym[1:] or 0), float(w)))
            else:
                vals.append((float(sym), float(w)))
        seq = rg.weighted_sequence(rg.WeightedAlphabet(tuple(vals), tuple(ind)), args.len, args.seed)
    else:
        seq = rg.interval_ball_draw(args.lo, args.hi, args.len, args.seed)
    return {"sequence": seq}, []


def _nnarg(text, name):
    if text is None:
        raise UsageError(f"--{name} is required for this operation")
    return nn.parse_nn(text)


def cmd_nnalg(args):
    op = args.op
    if op in ("add", "sub", "mul"):
        u, v = _nnarg(args.u, "u"), _nnarg(args.v, "v")
        return {"result": {"add": nn.nn_add, "sub": nn.nn_sub, "mul": nn.nn_mul}[op](u, v)}, []
    if op == "div":
        return {"result": nn.nn_div(_nnarg(args.num, "num"), _nnarg(args.den, "den"))}, []
    if op == "pow":
        return {"result": nn.nn_pow(_nnarg(args.u, "u"), args.n)}, []
    if op == "sqrt":
        u = _nnarg(args.u, "u")
        return {"roots": nn.nn_sqrt(u), "principal": nn.nn_sqrt_principal(u)}, []
    if op == "root":
        return {"roots": nn.nn_nth_root(_nnarg(args.u, "u"), args.n)}, []
    if op in ("csqrt", "croot"):
        if args.z is None:
            raise UsageError("--z is required for complex roots")
        z = nn.parse_ncomplex(args.z)
        if z.c or z.d:
            raise UsageError("--z must be an ordinary complex number a+bi")
        roots = nn.complex_sqrt(z.determinate) if op == "csqrt" else nn.complex_nth_root(z.determinate, args.n)
        return {"roots": roots}, []
    if op == "ncsqrt":
        if args.z is None:
            raise UsageError("--z is required")
        return {"roots": nn.ncomplex_sqrt(nn.parse_ncomplex(args.z))}, []
    if args.coeffs is None:
        raise UsageError("--coeffs is required for this operation")
    coeffs = [nn.parse_nn(t) for t in args.coeffs.replace(",", " ").split()]
    if op == "eval":
        return {"value": nn.nn_poly_eval(coeffs, _nnarg(args.x, "x"))}, []
    if len(coeffs) != 3:
        raise UsageError("quadratics need exactly three coefficients")
    q = nn.NeutroQuadratic(*coeffs)
    if op == "quad":
        return {"roots": nn.nn_quadratic_solve(q)}, []
    return {"factorings": nn.nn_factorings(q)}, []


# ---------------------------------------------------------------- parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--precision", type=int, default=6, help="significant digits in the report")
    p.add_argument("--plot", help="write an SVG figure to this path")
    p.add_argument("--seed", type=int, default=None)
    return p


def _data_args(p):
    p.add_argument("--data", help="whitespace separated observations, e.g. \"[2,5] 7 {4,6}\"")
    p.add_argument("--file", help="file with one observation per line")
    p.add_argument("--csv", help="CSV file")
    p.add_argument("--column", help="CSV column holding the observations")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="neutrostat", description="Statistics with set-valued and a+bI data.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_common()]

    p = sub.add_parser("describe", parents=common, help="mean, median, stddev, quartiles")
    _data_args(p)
    p.add_argument("--nn", action="store_true", help="treat --data as a+bI numbers")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("quartiles", parents=common, help="quartiles under the midpoint order")
    _data_args(p)
    p.add_argument("--method", choices=("average", "floor"), default="average")
    p.set_defaults(func=cmd_quartiles)

    p = sub.add_parser("freq", parents=common, help="frequency table with relative-frequency bounds")
    p.add_argument("--rows", help="category:frequency pairs, e.g. \"0:50 1:[60,80]\"")
    p.add_argument("--csv", help="CSV with category,frequency rows")
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("wrongobs", parents=common, help="statistics when k observations are wrong")
    p.add_argument("--data", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_wrongobs)

    p = sub.add_parser("binom", parents=common, help="binomial with indeterminate trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--th", type=int, required=True)
    p.add_argument("--ps", type=float, required=True)
    p.add_argument("--pi", type=float, required=True)
    p.add_argument("--pf", type=float, required=True)
    p.add_argument("--x", type=int)
    p.set_defaults(func=cmd_binom)

    p = sub.add_parser("multinom", parents=common, help="multinomial with indeterminate trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--th", type=int, required=True)
    p.add_argument("--p", required=True, help="event chances, e.g. \"0.2 0.3 0.4\"")
    p.add_argument("--i", type=float, required=True, help="indeterminacy chance")
    p.add_argument("--x", required=True, help="event counts")
    p.set_defaults(func=cmd_multinom)

    p = sub.add_parser("normal", parents=common, help="normal with set-valued mean or spread")
    p.add_argument("--mu", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--x", type=float)
    p.set_defaults(func=cmd_normal)

    p = sub.add_parser("fit", parents=common, help="least-squares line on set-valued points")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--csv")
    p.add_argument("--xcol", default="x")
    p.add_argument("--ycol", default="y")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("test", parents=common, help="large-sample z test")
    p.add_argument("--xbar", required=True)
    p.add_argument("--null", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--alt", default="upper", help="upper, lower or two")
    p.add_argument("--alpha")
    p.add_argument("--level", help="confidence level for the critical-value decision")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("ci", parents=common, help="confidence intervals")
    p.add_argument("--kind", choices=("mean-z", "mean-t", "proportion"), default="mean-z")
    p.add_argument("--xbar")
    p.add_argument("--s")
    p.add_argument("--p")
    p.add_argument("--n", required=True)
    p.add_argument("--level", default="0.95")
    p.add_argument("--known-sigma", action="store_true")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("samplesize", parents=common, help="sample size for a bound on the error")
    p.add_argument("--kind", choices=("mean", "proportion"), default="mean")
    p.add_argument("--sigma")
    p.add_argument("--range-high")
    p.add_argument("--range-low")
    p.add_argument("--pi")
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--level", default="0.95")
    p.set_defaults(func=cmd_samplesize)

    p = sub.add_parser("randgen", parents=common, help="random sequences with indeterminacies")
    p.add_argument("--mode", choices=("uniform", "weighted", "balls"), default="uniform")
    p.add_argument("--len", type=int, default=12)
    p.add_argument("--values")
    p.add_argument("--indets", type=int, default=1)
    p.add_argument("--weights")
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, default=10)
    p.set_defaults(func=cmd_randgen)

    p = sub.add_parser("nnalg", parents=common, help="a+bI algebra")
    p.add_argument("op", choices=("add", "sub", "mul", "div", "pow", "sqrt", "root", "csqrt", "croot",
                                  "ncsqrt", "quad", "factor", "eval"))
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--num")
    p.add_argument("--den")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--z")
    p.add_argument("--coeffs", help="coefficients from the highest degree, e.g. \"6 10-I 3I\"")
    p.add_argument("--x")
    p.set_defaults(func=cmd_nnalg)
    return parser


def _inputs(args) -> dict:
    skip = {"func", "format", "precision", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, run the command and return (exit code, rendered report)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command, "inputs": _inputs(args), "version": __version__}
    try:
        results, warnings = args.func(args)
        report["results"] = _jsonable(results, args.precision)
        report["warnings"] = _jsonable(list(warnings), args.precision)
        code = EXIT_OK
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE, ""
    except (NeutroStatError, ZeroDivisionError) as e:
        name = e.code if isinstance(e, NeutroStatError) else type(e).__name__
        report["error"] = {"code": name, "message": str(e)}
        code = EXIT_DOMAIN
    except ValueError as e:
        # malformed numbers and out-of-range arguments
        report["error"] = {"code": type(e).__name__, "message": str(e)}
        code = EXIT_DOMAIN
    if args.command == "randgen" and args.format == "table" and "results" in report:
        return code, "\n".join(report["results"]["sequence"])
    return code, render(report, args.format)


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
