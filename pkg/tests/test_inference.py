import csv
import math
import shutil
from importlib import resources

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import norm

from neutrostat import inference as inf
from neutrostat import setval as sv
from neutrostat.errors import (
    BadBound, BadSpread, DfOutOfTable, PreconditionFailed, SmallSample, UnknownLevel,
)


@given(z=st.floats(-8, 8))
def test_phi_matches_scipy(z):
    assert inf.phi(z) == pytest.approx(norm.cdf(z), abs=1e-14)


def test_parse_level():
    assert inf.parse_level(95) == inf.parse_level("95%") == inf.parse_level(0.95) == 0.95
    with pytest.raises(UnknownLevel):
        inf.z_crit(0.42)


def test_t_crit_lookup_rules():
    assert inf.t_crit(17, 0.95) == 2.110
    assert inf.t_crit(35, 0.95) == inf.t_crit(30, 0.95)
    assert inf.t_crit(500, 0.95) == 1.96 and inf.t_crit(1000, 0.95) == 1.962
    assert inf.t_crit(110, 0.95) == inf.t_crit(100, 0.95)
    assert inf.t_crit(5000, 0.95) == inf.z_crit(0.95) == 1.96
    assert inf.t_crit(10, 0.95, tails=1) == 1.812
    with pytest.raises(DfOutOfTable):
        inf.t_crit(0)


def test_z_crit_one_tail():
    assert inf.z_crit(0.90, tails=1) == 1.28
    assert inf.z_crit(0.99, tails=2) == 2.58


def test_table_override(tmp_path, monkeypatch):
    src = resources.files("neutrostat.data")
    for name in ("z_crit.csv", "t_table.csv", "z_table.csv"):
        with resources.as_file(src.joinpath(name)) as f:
            shutil.copy(f, tmp_path / name)
    rows = list(csv.reader(open(tmp_path / "z_crit.csv")))
    rows = [r if r[0] != "1.96" else ["1.959964", *r[1:]] for r in rows]
    csv.writer(open(tmp_path / "z_crit.csv", "w", newline="")).writerows(rows)
    monkeypatch.setenv("NEUTROSTAT_TABLES", str(tmp_path))
    assert inf.z_crit(0.95) == 1.959964
    monkeypatch.delenv("NEUTROSTAT_TABLES")
    assert inf.z_crit(0.95) == 1.96


def test_z_statistic_and_preconditions():
    z = inf.z_test_stat("[48,50]", "[40,41]", 25, 64)
    assert (z.inf, z.sup) == (2.24, 3.2)
    with pytest.raises(SmallSample):
        inf.z_test_stat(10, 9, 1, 30)
    with pytest.raises(BadSpread):
        inf.z_test_stat(10, 9, "[0,1]", 40)


def test_decisions():
    z = sv.Interval(2.24, 3.2)
    assert inf.z_decision(z, "upper", 1.28).verdict is inf.Verdict.REJECT
    assert inf.z_decision(z, "upper", 3.29).verdict is inf.Verdict.FAIL_TO_REJECT
    d = inf.z_decision(z, "upper", 2.33)
    assert d.verdict is inf.Verdict.INDETERMINATE and d.reject_chance == pytest.approx(0.87 / 0.96)
    p = inf.p_value(z, "upper")
    assert inf.p_decision(p, 0.10).verdict is inf.Verdict.REJECT
    assert inf.p_decision(p, 0.0005).verdict is inf.Verdict.FAIL_TO_REJECT


def test_p_decision_set_alpha_by_simulation():
    rng = np.random.default_rng(11)
    p, a = sv.Interval(0.01, 0.05), sv.Interval(0.02, 0.08)
    u, v = rng.uniform(0.01, 0.05, 400_000), rng.uniform(0.02, 0.08, 400_000)
    assert inf.p_decision(p, a).reject_chance == pytest.approx(np.mean(u <= v), abs=3e-3)


@given(lo=st.floats(-4, 4), w=st.floats(0.01, 3))
def test_two_sided_p_value_is_sound(lo, w):
    p = inf.p_value(sv.Interval(lo, lo + w), "two")
    for z in np.linspace(lo, lo + w, 11):
        assert p.inf - 1e-12 <= 2 * norm.sf(abs(z)) <= p.sup + 1e-12


@given(lo=st.floats(-4, 4), w=st.floats(0.01, 3))
def test_lower_p_value_is_sound(lo, w):
    p = inf.p_value(sv.Interval(lo, lo + w), "lower")
    for z in np.linspace(lo, lo + w, 11):
        assert p.inf - 1e-12 <= norm.cdf(z) <= p.sup + 1e-12


@given(
    xbar=st.tuples(st.floats(-50, 50), st.floats(0, 5)),
    s=st.tuples(st.floats(0.5, 10), st.floats(0, 5)),
    n=st.integers(31, 400),
    level=st.sampled_from([0.80, 0.90, 0.95, 0.98, 0.99]),
)
def test_ci_selection_containment(xbar, s, n, level):
    # every crisp interval from a selection of the set inputs lies inside the set interval
    xb = sv.Interval(xbar[0], xbar[0] + xbar[1]) if xbar[1] else sv.Crisp(xbar[0])
    sd = sv.Interval(s[0], s[0] + s[1]) if s[1] else sv.Crisp(s[0])
    ci = inf.ci_mean_z(xb, sd, n, level).interval
    z = inf.z_crit(level)
    for m in np.linspace(xb.inf, xb.sup, 5):
        for sig in np.linspace(sd.inf, sd.sup, 5):
            half = z * sig / math.sqrt(n)
            assert ci.inf - 1e-9 <= m - half and m + half <= ci.sup + 1e-9


@given(
    p=st.tuples(st.floats(0.1, 0.8), st.floats(0, 0.1)),
    n=st.integers(100, 1000),
)
def test_proportion_ci_selection_containment(p, n):
    pp = sv.Interval(p[0], p[0] + p[1]) if p[1] else sv.Crisp(p[0])
    ci = inf.ci_proportion(pp, n).interval
    for q in np.linspace(pp.inf, pp.sup, 7):
        half = 1.96 * math.sqrt(q * (1 - q) / n)
        assert ci.inf - 1e-9 <= q - half and q + half <= ci.sup + 1e-9


def test_ci_crisp_degenerates():
    ci = inf.ci_mean_z(10, 2, 100, 0.95)
    assert (ci.interval.inf, ci.interval.sup) == (pytest.approx(10 - 0.392), pytest.approx(10 + 0.392))
    t = inf.ci_mean_t(10, 2, 18, 0.95)
    assert t.critical == 2.110 and t.checks["df"] == 17


def test_ci_errors():
    with pytest.raises(SmallSample):
        inf.ci_mean_z(10, 2, 20)
    assert inf.ci_mean_z(10, 2, 20, known_sigma=True).critical == 1.96
    with pytest.raises(PreconditionFailed) as info:
        inf.ci_proportion(0.02, 100)
    assert info.value.bound == "np"


def test_sample_sizes():
    s = inf.sample_size_mean(1, 0.196)
    assert s.n_final == 100
    assert s.notes[0].code == "SquaredForm"
    p = inf.sample_size_proportion("[0.2,0.3]", 0.05)
    assert p.n_set.sup == pytest.approx(0.21 * (1.96 / 0.05) ** 2)
    assert p.n_final == math.ceil(p.n_set.sup)
    assert inf.sample_size_proportion(0, 0.05).notes[0].code == "MinimalSample"
    with pytest.raises(BadBound):
        inf.sample_size_mean(1, 0)


def test_range_sigma_and_clt():
    r = inf.range_sigma_estimate("[500,550]", "[100,150]")
    assert (r.inf, r.sup) == (87.5, 112.5)
    c = inf.clt_params(10, 4, 64)
    assert c.sigma_xbar == sv.Crisp(0.5) and c.applicable


def test_embedded_tables_match_reference_quantiles():
    from scipy.stats import t

    _, rows, ztab = inf.tables()
    off = []
    for df, row in rows.items():
        for cum, v in row.items():
            ref = norm.ppf(cum) if df == "z" else t.ppf(cum, df)
            # entries carry three decimals, two for df = 1
            if abs(ref - v) > (0.005 if df == 1 else 0.0006):
                off.append((df, cum, v))
    # the printed table has 3.365 where the quantile is 3.355
    assert off == [(8, 0.995, 3.365)]
    assert all(abs(norm.cdf(z) - v) <= 1e-4 for z, v in ztab.items())
    for r in inf.tables()[0]:
        assert abs(norm.ppf(1 - r["right_tail"]) - r["z"]) < 0.01
