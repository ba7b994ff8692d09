"""Acceptance criteria, one reported line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
Each line reads ``criterion N PASS|FAIL title`` followed by the failing checks.
"""
import itertools
import math
import sys
import time

import numpy as np
import pytest

from neutrostat import descriptive as ds
from neutrostat import distributions as dist
from neutrostat import inference as inf
from neutrostat import neutro_num as nn
from neutrostat import regression as rg
from neutrostat import setval as sv
from neutrostat.errors import NoRealRoot, UndefinedDivision

REPORT: list[str] = []


class Checks:
    def __init__(self):
        self.items = []

    def add(self, label, ok, detail=""):
        self.items.append((label, bool(ok), detail))

    def near(self, label, got, want, tol):
        self.add(label, abs(got - want) <= tol, f"got {got:.6g}, want {want} ± {tol}")

    def span(self, label, s, lo, hi, tol):
        s = sv.as_setvalue(s)
        ok = abs(s.inf - lo) <= tol and abs(s.sup - hi) <= tol
        self.add(label, ok, f"got [{s.inf:.6g}, {s.sup:.6g}], want [{lo}, {hi}] ± {tol}")

    def exact(self, label, got, want):
        self.add(label, got == want, f"got {got}, want {want}")

    def raises(self, label, exc, fn):
        try:
            fn()
        except exc:
            self.add(label, True)
            return
        except Exception as e:  # noqa: BLE001
            self.add(label, False, f"raised {type(e).__name__}")
            return
        self.add(label, False, "no error")


def record(number, title, checks):
    failed = [c for c in checks.items if not c[1]]
    status = "FAIL" if failed else "PASS"
    REPORT.append(f"criterion {number:>2} {status}  {title} ({len(checks.items) - len(failed)}/{len(checks.items)} checks)")
    for label, _, detail in failed:
        REPORT.append(f"              failed: {label}: {detail}")
    assert not failed, "; ".join(f"{label}: {detail}" for label, _, detail in failed)


def _nn_exact(c, label, got, want):
    want = nn.parse_nn(want)
    c.add(label, got == want, f"got {got}, want {want}")


# 1


def test_c01_nn_statistics():
    c = Checks()
    d = ["-2-4I", "-1+0I", "3+5I", "6+7I"]
    _nn_exact(c, "mean", ds.mean_nn(d), "1.5+2I")
    _nn_exact(c, "median", ds.median_nn(d), "1+2.5I")
    s = ds.stddev_nn(d)
    c.near("stddev determinate part", s.a, 3.20, 0.005)
    c.near("stddev coefficient of I", s.b, 0.64, 0.005)
    record(1, "a+bI mean, median, stddev", c)


# 2


def test_c02_division():
    c = Checks()
    _nn_exact(c, "(2+3I)/(1+I)", nn.nn_div("2+3I", "1+I"), "2+0.5I")
    _nn_exact(c, "(2+3I)/(8+12I)", nn.nn_div("2+3I", "8+12I"), "0.25")
    c.raises("(2+3I)/(1-I)", UndefinedDivision, lambda: nn.nn_div("2+3I", "1-I"))
    c.raises("I/I", UndefinedDivision, lambda: nn.nn_div(nn.I, nn.I))
    record(2, "a+bI division", c)


# 3


def test_c03_roots():
    c = Checks()
    got = {(r.a, r.b) for r in nn.nn_sqrt("9+7I")}
    c.exact("sqrt(9+7I) pairs", got, {(3.0, -7.0), (3.0, 1.0), (-3.0, 7.0), (-3.0, -1.0)})
    r = nn.complex_sqrt(3 - 4j)
    c.add("complex_sqrt(3-4i)", len(r) == 2 and abs(r[0] - (2 - 1j)) < 1e-9 and abs(r[1] + (2 - 1j)) < 1e-9, str(r))
    roots = nn.complex_nth_root(1j, 3)
    c.add("cube roots of i contain -i", any(abs(z + 1j) < 1e-9 for z in roots), str(roots))
    record(3, "real, a+bI and complex roots", c)


# 4


def test_c04_quadratic():
    c = Checks()
    q = nn.NeutroQuadratic("6", "10-I", "3I")
    roots = nn.nn_quadratic_solve(q)
    want = [(0, -0.5), (-5 / 3, 2 / 3), (0, -1), (-10 / 6, 7 / 6)]
    matched = all(any(abs(r.a - a) <= 1e-9 and abs(r.b - b) <= 1e-9 for r in roots) for a, b in want)
    c.add("four roots", matched and len(roots) == 4, ", ".join(map(str, roots)))
    c.exact("number of factorings", len(nn.nn_factorings(q)), 2)
    zero = all(nn.nn_poly_eval(q, r).isclose(nn.NeutroNumber(0), 1e-9) for r in roots)
    c.add("every root evaluates to 0", zero)
    record(4, "quadratic with indeterminate coefficients", c)


# 5


def test_c05_interval_stats():
    c = Checks()
    d = ["[6,6]", "[2,5]", "[30,30]", "[18,24]"]
    m = ds.median_set(d)
    c.add("median [16,17.5]", (m.inf, m.sup) == (16, 17.5), f"got {m}")
    mean = ds.mean_set(d)
    c.add("mean [14,16.25]", (mean.inf, mean.sup) == (14, 16.25), f"got {mean}")
    s = ds.stddev_set(d)
    ok = math.isclose(s.inf, 9.20163, rel_tol=0.01) and math.isclose(s.sup, 12.8754, rel_tol=0.01)
    c.add("stddev within 1%", ok, f"got [{s.inf:.6g}, {s.sup:.6g}]")
    record(5, "interval mean, median, stddev", c)


# 6


def test_c06_quartiles():
    c = Checks()
    data = sv.parse_many("1 (2,3) {4,6} 5 [7,10] [7,11] 9 12 14 [14,15] 20 {21}U(22,25]")
    q1, q2, q3 = ds.quartiles(data)
    c.exact("Q1", q1, sv.Finite((4.5, 5.5)))
    c.exact("Q2", (q2.inf, q2.sup), (8, 10))
    c.exact("Q3", (q3.inf, q3.sup), (14, 14.5))
    record(6, "quartiles", c)


# 7


def test_c07_frequency_table():
    c = Checks()
    rows = [("0", 50), ("1", "[60,80]"), ("2", "[70,90]"), ("3", "[40,50]")]
    t = ds.freq_table(rows)
    want = [(0.185, 0.227), (0.240, 0.333), (0.280, 0.375), (0.154, 0.217)]
    for row, (lo, hi) in zip(t.rows, want):
        c.span(f"row {row.category}", row.rel_freq, lo, hi, 0.001)
    c.span("total frequency", t.total.frequency, 220, 270, 0.001)
    c.span("total relative frequency", t.total.rel_freq, 0.859, 1.152, 0.001)
    naive = ds.naive_rel_freq(rows)
    for j in (1, 2):
        strict = t.rows[j].rel_freq.within(naive[j]) and (
            t.rows[j].rel_freq.inf > naive[j].inf or t.rows[j].rel_freq.sup < naive[j].sup
        )
        c.add(f"row {j + 1} strictly inside naive bound", strict, f"{t.rows[j].rel_freq} vs {naive[j]}")
    record(7, "frequency table", c)


# 8


def test_c08_wrong_observations():
    c = Checks()
    r = ds.wrong_obs_enumerate([17, 12, 5, 8, 9], 1, weights=[0.4, 0.1, 0.3, 0.2, 0.7])
    table = [(10.5, 11.5, 3.5), (10.5, 10.75, 4.38035), (10.0, 10.5, 4.5), (8.5, 9.75, 4.43706), (8.5, 8.5, 2.5)]
    for i, (s, (md, mn, sd)) in enumerate(zip(r.samples, table), 1):
        c.near(f"sample {i} median", s.median, md, 1e-4)
        c.near(f"sample {i} mean", s.mean, mn, 1e-4)
        c.near(f"sample {i} stddev", s.stddev, sd, 1e-4)
    iv = r.combined.interval_style
    c.span("interval style median", iv["median"], 8.5, 10.5, 1e-4)
    c.span("interval style mean", iv["mean"], 8.5, 11.5, 1e-4)
    c.span("interval style stddev", iv["stddev"], 2.5, 4.43706, 1e-4)
    for style, want in (("average", (9.6, 10.2, 3.86348)), ("weighted", (9.35294, 9.83824, 3.42673))):
        got = getattr(r.combined, f"{style}_style")
        for name, w in zip(("median", "mean", "stddev"), want):
            c.near(f"{style} style {name}", got[name], w, 1e-4)
    record(8, "wrong-observation enumeration", c)


# 9


def _brute(spec, x):
    t = i = f = 0.0
    w = {"S": spec.pS, "I": spec.pI, "F": spec.pF}
    for word in itertools.product("SIF", repeat=spec.n):
        p = math.prod(w[ch] for ch in word)
        if word.count("I") > spec.th:
            i += p
        elif word.count("S") == x:
            t += p
        else:
            f += p
    return t, i, f


def test_c09_binomial():
    c = Checks()
    spec = dist.BinomialSpec(5, 2, 0.1, 0.2, 0.8)
    t = dist.nbinomial_pmf(spec, 2)
    c.near("T2", t.T, 0.0992, 1e-5)
    c.near("I2", t.I, 0.07232, 1e-5)
    c.near("F2", t.F, 1.43899, 1e-5)
    nt = dist.normalize_triplet(t)
    for name, got, want in (("T", nt.T, 0.061595), ("I", nt.I, 0.044905), ("F", nt.F, 0.893500)):
        c.near(f"normalized {name}", got, want, 1e-5)
    c.near("T+I+F", t.total, 1.1**5, 1e-9)
    rng = np.random.default_rng(9)
    worst = 0.0
    for n in range(1, 9):
        pS, pI, pF = rng.uniform(0, 1, 3)
        s = dist.BinomialSpec(n, int(rng.integers(0, n + 1)), pS, pI, pF)
        for x in range(n + 1):
            a, b = dist.nbinomial_pmf(s, x), dist.nbinomial_via_trinomial(s, x)
            for u, v, w in zip((a.T, a.I, a.F), (b.T, b.I, b.F), _brute(s, x)):
                worst = max(worst, abs(u - v), abs(u - w))
    c.add("pmf = trinomial = brute force for n <= 8", worst <= 1e-9, f"max gap {worst:.3g}")
    start = time.perf_counter()
    _brute(dist.BinomialSpec(8, 3, 0.3, 0.3, 0.3), 4)
    elapsed = time.perf_counter() - start
    c.add("brute force n = 8 under 1 s", elapsed < 1.0, f"{elapsed:.3f} s")
    record(9, "binomial with indeterminacy", c)


# 10


def test_c10_normal_bands():
    c = Checks()
    cases = [
        ("15", "[2,3]", [(12, 18), (9, 21), (6, 24)]),
        ("[15,17]", "2", [(13, 19), (11, 21), (9, 23)]),
        ("[15,17]", "[2,3]", [(12, 20), (9, 23), (6, 26)]),
    ]
    for mu, sigma, bands in cases:
        spec = dist.NormalSpec(mu, sigma)
        for k, want in enumerate(bands, 1):
            b = dist.nnormal_sigma_band(spec, k)
            c.exact(f"mu {mu}, sigma {sigma}, k {k}", (b.inf, b.sup), want)
    record(10, "normal sigma bands", c)


# 11

POINTS = list(zip(["2", "[4,5]", "1", "(6,7)", "8", "3"], ["[1,3]", "6", "2", "(10,13)", "{14,15}", "5"]))


def test_c11_regression():
    c = Checks()
    m = rg.ls_fit(POINTS)
    c.span("b", m.slope_b, 0.42857, 6.58824, 1e-4)
    c.span("a", m.intercept_a, -22.2157, 5.61905, 1e-3)
    preds = [(-21.3587, 18.7955), (-20.5014, 38.5603), (-21.7871, 12.2073),
             (-19.6443, 51.7367), (-18.7871, 58.325), (-20.93, 25.3838)]
    resids = [(-17.7985, 24.3587), (-32.5603, 26.5014), (-10.2073, 23.7871),
              (-41.7367, 32.6443), (-44.325, 33.7871), (-20.3838, 25.93)]
    for i, ((x, _), p, r, rr) in enumerate(zip(POINTS, preds, resids, rg.residuals(POINTS, m)), 1):
        c.span(f"predicted {i}", rg.predict(m, x), *p, 1e-3)
        c.span(f"residual {i}", rr, *r, 1e-3)
    c.add("coverage all true", all(rg.coverage_check(POINTS, m)))
    c.near("NSSResid by midpoints", rg.nss_resid_midpoint(POINTS, m), 122.16, 0.01)
    c.span("NSSTo", rg.nss_to(POINTS), 308.222, 427.889, 0.001)
    r2 = rg.r_squared(122.16, sv.Interval(308.222, 427.889))
    c.near("r2 lower endpoint from the quoted sums of squares", r2.raw.inf, 0.6037, 0.001)
    c.add("r2 carries an endpoint-pairing note", r2.notes and r2.notes[0].code == "EndpointPairing")
    r = rg.correlation(POINTS)
    ok = r.clipped.sup == 1 and not r.clipped.hi_open and r.clipped.lo_open
    c.add("correlation clipped to (lower, 1]", ok, str(r.clipped))
    c.near("correlation lower endpoint", r.clipped.inf, 0.2157, 0.001)
    record(11, "least-squares line on set-valued points", c)


# 12


def test_c12_inference():
    c = Checks()
    z = inf.z_test_stat("[48,50]", "[40,41]", 25, 64)
    c.exact("z statistic", (z.inf, z.sup), (2.24, 3.20))
    p = inf.p_value(z, "upper")
    c.span("P-value", p, 0.0007, 0.0125, 1e-4)
    c.exact("alpha 0.10", inf.p_decision(p, 0.10).verdict, inf.Verdict.REJECT)
    c.exact("alpha 0.0005", inf.p_decision(p, 0.0005).verdict, inf.Verdict.FAIL_TO_REJECT)
    d = inf.p_decision(p, 0.01)
    c.exact("alpha 0.01", d.verdict, inf.Verdict.INDETERMINATE)
    c.near("reject chance", d.reject_chance, 0.79, 0.01)
    c.near("fail chance", d.fail_chance, 0.21, 0.01)
    c.span("z interval", inf.ci_mean_z("[18,20]", "[4,5]", 60, 0.90).interval, 16.94, 21.06, 0.01)
    t = inf.ci_mean_t("[8,10]", "[3,4]", 18, 0.95)
    c.exact("t critical", t.critical, 2.110)
    c.span("t interval", t.interval, 6.011, 11.989, 0.001)
    pr = inf.ci_proportion("[0.68,0.75]", "{200..220}", 0.99)
    c.span("proportion interval", pr.interval, 0.590626, 0.839374, 1e-5)
    c.add("preconditions reported", pr.checks == {"min_np": 136, "min_n_one_minus_p": 50}, str(pr.checks))
    n = inf.sample_size_mean("[87.5,137.5]", 40, 0.95)
    c.span("n set", n.n_set, 18.38, 45.39, 0.01)
    c.exact("n final", n.n_final, 46)
    record(12, "tests, P-values, intervals, sample size", c)


# 13


def test_c13_tables():
    c = Checks()
    _, t_rows, z_table = inf.tables()
    worst = max(abs(inf.phi(z) - v) for z, v in z_table.items())
    c.add("phi against every z-table entry", worst <= 1e-4 + 1e-12, f"max gap {worst:.3g}")
    for r in inf.tables()[0]:
        c.exact(f"z_crit central {r['central']}", inf.z_crit(r["central"]), r["z"])
        c.exact(f"z_crit one tail {r['right_tail']}", inf.z_crit(1 - r["right_tail"], tails=1), r["z"])
    bad = [
        (df, cum) for df, row in t_rows.items() if df != "z"
        for cum, v in row.items() if inf.t_crit(df, cum, tails=1) != v
    ]
    c.add("t_crit over every table cell", not bad, str(bad[:5]))
    record(13, "normal CDF and critical-value tables", c)


# 14


def _setvals(rng, k):
    out = []
    for _ in range(k):
        kind = rng.integers(0, 4)
        a, b = sorted(rng.integers(-20, 21, 2) / 2)
        if kind == 0 or a == b:
            out.append(sv.Crisp(a))
        elif kind == 1:
            out.append(sv.Interval(a, b, bool(rng.integers(0, 2)), bool(rng.integers(0, 2))))
        elif kind == 2:
            out.append(sv.finite(*rng.integers(-20, 21, 3) / 2))
        else:
            out.append(sv.union(sv.Interval(a, b), float(b + 1 + rng.integers(0, 4))))
    return out


def _grid(s):
    pts = []
    for lo, hi in s.pieces():
        pts.extend(np.linspace(lo, hi, 5) if hi > lo else [lo])
    return pts


def test_c14_property_suites():
    c = Checks()
    rng = np.random.default_rng(14)
    start = time.perf_counter()

    bad = 0
    ops = {"+": (sv.add, np.add), "-": (sv.sub, np.subtract), "*": (sv.mul, np.multiply)}
    for _ in range(400):
        x, y = _setvals(rng, 2)
        for f, g in ops.values():
            r = f(x, y)
            vals = [g(p, q) for p in _grid(x) for q in _grid(y)]
            bad += sum(not (r.inf - 1e-9 <= v <= r.sup + 1e-9) for v in vals)
        if y.inf > 0:
            r = sv.div(x, y)
            bad += sum(not (r.inf - 1e-9 <= p / q <= r.sup + 1e-9) for p in _grid(x) for q in _grid(y))
    c.add("set arithmetic soundness by sampling", bad == 0, f"{bad} escapes")

    bad = 0
    for _ in range(300):
        x, y, z = _setvals(rng, 3)
        if sv.order_cmp(x, y) != -sv.order_cmp(y, x):
            bad += 1
        if sv.order_cmp(x, y) <= 0 and sv.order_cmp(y, z) <= 0 and sv.order_cmp(x, z) > 0:
            bad += 1
        if sv.order_cmp(x, y) == 0 and (x.inf, x.sup) != (y.inf, y.sup):
            bad += 1
    c.add("midpoint order totality", bad == 0, f"{bad} violations")

    bad = 0
    for _ in range(100):
        xs = list(rng.integers(-50, 50, int(rng.integers(3, 9))) / 2)
        ys = list(rng.integers(-50, 50, len(xs)) / 2)
        bad += not math.isclose(ds.mean_set(xs).value, float(np.mean(xs)), abs_tol=1e-9)
        bad += not math.isclose(ds.stddev_set(xs).value, float(np.std(xs)), abs_tol=1e-9)
        bad += not math.isclose(ds.median_set(xs).value, float(np.median(xs)), abs_tol=1e-9)
        bad += not math.isclose(nn.nn_div(xs[0], 3.0).a, xs[0] / 3, abs_tol=1e-12)
        if len(set(xs)) > 1:
            m = rg.ls_fit(list(zip(xs, ys)))
            slope, icpt = np.polyfit(xs, ys, 1)
            bad += not math.isclose(m.slope_b.value, slope, abs_tol=1e-8)
            bad += not math.isclose(m.intercept_a.value, icpt, abs_tol=1e-8)
        sd = abs(xs[0]) + 1
        ci = inf.ci_mean_z(xs[1], sd, 50)
        bad += not math.isclose(ci.interval.sup - xs[1], 1.96 * sd / math.sqrt(50), rel_tol=1e-12)
        pdf = dist.nnormal_pdf(dist.NormalSpec(xs[0], sd), xs[1])
        bad += not isinstance(pdf, sv.Crisp)
    c.add("crisp inputs give classical results", bad == 0, f"{bad} mismatches")

    bad = 0
    for _ in range(300):
        u = nn.NeutroNumber(*(rng.integers(-40, 41, 2) / 4))
        v = nn.NeutroNumber(*(rng.integers(-40, 41, 2) / 4))
        if v.a != 0 and v.total != 0:
            bad += not nn.nn_mul(nn.nn_div(u, v), v).isclose(u)
        for n in (2, 3, 4):
            try:
                roots = nn.nn_nth_root(u, n)
            except NoRealRoot:
                continue
            bad += sum(not nn.nn_pow(r, n).isclose(u) for r in roots)
        q = nn.NeutroComplex(*(rng.integers(-40, 41, 4) / 4))
        bad += sum(not (r * r).isclose(q, 1e-8 * 10) for r in nn.ncomplex_sqrt(q))
    c.add("root and division round-trips", bad == 0, f"{bad} failures")

    bad = 0
    for _ in range(200):
        lo = float(rng.uniform(-50, 50))
        xb = sv.Interval(lo, lo + float(rng.uniform(0.1, 5)))
        s0 = float(rng.uniform(0.5, 10))
        sd = sv.Interval(s0, s0 + float(rng.uniform(0.1, 5)))
        n = int(rng.integers(31, 400))
        ci = inf.ci_mean_z(xb, sd, n).interval
        for m in np.linspace(xb.inf, xb.sup, 4):
            for s in np.linspace(sd.inf, sd.sup, 4):
                h = 1.96 * s / math.sqrt(n)
                bad += not (ci.inf - 1e-9 <= m - h and m + h <= ci.sup + 1e-9)
    c.add("interval selection containment", bad == 0, f"{bad} escapes")

    elapsed = time.perf_counter() - start
    c.add("suite under 30 s", elapsed < 30, f"{elapsed:.1f} s")
    record(14, "property suites", c)


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    print("\n".join(REPORT))
    sys.exit(0 if all(" PASS " in line for line in REPORT if line.startswith("criterion")) else 1)
