"""Tests, P-values, confidence intervals and sample sizes with set-valued inputs.

Critical values come from the embedded z and t tables (CSV files in
``neutrostat/data``; point ``NEUTROSTAT_TABLES`` at a directory holding
files with the same names to override them).  The normal CDF itself is
computed from ``math.erfc``.
"""
from __future__ import annotations

import csv
import enum
import functools
import io
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from . import setval as sv
from .errors import (
    BadBound,
    BadN,
    BadSpread,
    DfOutOfTable,
    PreconditionFailed,
    SmallSample,
    UnknownLevel,
)
from .notes import Note
from .setval import Crisp, SetValue

# ---------------------------------------------------------------- tables


def _read_table(name: str) -> list[dict]:
    override = os.environ.get("NEUTROSTAT_TABLES")
    if override:
        with open(os.path.join(override, name), newline="") as fh:
            text = fh.read()
    else:
        text = resources.files("neutrostat.data").joinpath(name).read_text()
    return list(csv.DictReader(io.StringIO(text)))


@functools.lru_cache(maxsize=None)
def _tables(override: Optional[str]):
    z_crit_rows = [{k: float(v) for k, v in r.items()} for r in _read_table("z_crit.csv")]
    t_rows = {}
    for r in _read_table("t_table.csv"):
        key = r.pop("df")
        t_rows[key if key == "z" else int(key)] = {float(k): float(v) for k, v in r.items()}
    z_table = {}
    for r in _read_table("z_table.csv"):
        base = float(r.pop("z"))
        for col, v in r.items():
            z_table[round(base + float(col), 2)] = float(v)
    return z_crit_rows, t_rows, z_table


def tables():
    """(z critical rows, t rows by df, cumulative z table) for the active table directory."""
    return _tables(os.environ.get("NEUTROSTAT_TABLES"))


def parse_level(level) -> float:
    """Accept 0.95, 95 or "95%"."""
    if isinstance(level, str):
        text = level.strip()
        pct = text.endswith("%")
        value = float(text.rstrip("%"))
        level = value / 100 if pct or value > 1 else value
    level = float(level)
    if level > 1:
        level /= 100
    if not (0 < level < 1):
        raise UnknownLevel(f"confidence level {level} outside (0, 1)")
    return level


def _same(a: float, b: float) -> bool:
    return abs(a - b) < 1e-9


def z_crit(level=0.95, tails: int = 2) -> float:
    """z with the given central area (tails=2) or upper-tail area 1 - level (tails=1)."""
    level = parse_level(level)
    rows, _, _ = tables()
    for r in rows:
        if tails == 2 and _same(r["central"], level):
            return r["z"]
        if tails == 1 and _same(r["right_tail"], 1 - level):
            return r["z"]
    raise UnknownLevel(f"no z critical value for level {level} with {tails} tail(s)")


def t_crit(df: int, level=0.95, tails: int = 2) -> float:
    """Table lookup; between listed rows the next smaller df is used, and df > 120
    without an exact row falls back to the z row."""
    level = parse_level(level)
    if int(df) != df or df < 1:
        raise DfOutOfTable(f"degrees of freedom must be a positive integer, got {df}")
    df = int(df)
    _, rows, _ = tables()
    if df in rows:
        row = rows[df]
    elif df > 120:
        row = rows["z"]
    else:
        row = rows[max(k for k in rows if k != "z" and k < df)]
    cum = 1 - (1 - level) / 2 if tails == 2 else level
    for col, v in row.items():
        if _same(col, cum):
            return v
    raise UnknownLevel(f"no t critical value for level {level} with {tails} tail(s)")


# ---------------------------------------------------------------- normal CDF


def phi(z: float) -> float:
    """Standard normal CDF, 0.5 * erfc(-z / sqrt 2)."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _span(lo: float, hi: float) -> SetValue:
    return Crisp(lo) if lo == hi else sv.Interval(lo, hi)


# ---------------------------------------------------------------- tests


class Alternative(enum.Enum):
    GREATER_THAN_SUP = "upper"
    LESS_THAN_INF = "lower"
    OUTSIDE = "two"

    @classmethod
    def parse(cls, text) -> "Alternative":
        if isinstance(text, cls):
            return text
        aliases = {
            "upper": cls.GREATER_THAN_SUP, "greater": cls.GREATER_THAN_SUP, "right": cls.GREATER_THAN_SUP,
            "lower": cls.LESS_THAN_INF, "less": cls.LESS_THAN_INF, "left": cls.LESS_THAN_INF,
            "two": cls.OUTSIDE, "two-sided": cls.OUTSIDE, "outside": cls.OUTSIDE, "both": cls.OUTSIDE,
        }
        try:
            return aliases[str(text).lower()]
        except KeyError:
            raise ValueError(f"unknown alternative {text!r}") from None


@dataclass(frozen=True)
class Hypothesis:
    null_set: SetValue
    alternative: Alternative


class Verdict(enum.Enum):
    REJECT = "Reject"
    FAIL_TO_REJECT = "FailToReject"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    reject_chance: float

    @property
    def fail_chance(self) -> float:
        return 1.0 - self.reject_chance

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reject_chance": self.reject_chance,
            "fail_chance": self.fail_chance,
        }


def _decide(chance: float) -> Decision:
    if chance >= 1.0:
        return Decision(Verdict.REJECT, 1.0)
    if chance <= 0.0:
        return Decision(Verdict.FAIL_TO_REJECT, 0.0)
    return Decision(Verdict.INDETERMINATE, chance)


def z_test_stat(xbar, null_set, s, n) -> SetValue:
    """(xbar - null) / (s / sqrt(n)); needs every sample size above 30."""
    xbar, null_set, s, n = (sv.as_setvalue(v) for v in (xbar, null_set, s, n))
    if n.inf <= 30:
        raise SmallSample(f"z test needs n > 30, got {n}")
    if s.inf <= 0:
        raise BadSpread(f"spread must be positive, got {s}")
    return sv.div(sv.sub(xbar, null_set), sv.div(s, sv.sqrt(n)))


def _share_above(lo: float, hi: float, c: float) -> float:
    """Share of [lo, hi] strictly above c (a point counts fully or not at all)."""
    if hi == lo:
        return 1.0 if lo > c else 0.0
    return min(max((hi - c) / (hi - lo), 0.0), 1.0)


def z_decision(z, alternative, crit: float) -> Decision:
    """Reject when the whole statistic is in the rejection region, fail when none
    of it is; otherwise the reject chance is the share of the statistic's hull
    lying in the rejection region."""
    z = sv.as_setvalue(z)
    alt = Alternative.parse(alternative)
    lo, hi = z.inf, z.sup
    if alt is Alternative.GREATER_THAN_SUP:
        chance = _share_above(lo, hi, crit)
    elif alt is Alternative.LESS_THAN_INF:
        chance = _share_above(-hi, -lo, crit)
    else:
        chance = min(_share_above(lo, hi, crit) + _share_above(-hi, -lo, crit), 1.0)
    return _decide(chance)


def p_value(z, alternative) -> SetValue:
    z = sv.as_setvalue(z)
    alt = Alternative.parse(alternative)
    lo, hi = z.inf, z.sup
    if alt is Alternative.GREATER_THAN_SUP:
        return _span(phi(-hi), phi(-lo))
    if alt is Alternative.LESS_THAN_INF:
        return _span(phi(lo), phi(hi))
    far = max(abs(lo), abs(hi))
    if lo <= 0 <= hi:
        return _span(2 * phi(-far), 1.0)
    near = min(abs(lo), abs(hi))
    return _span(2 * phi(-far), 2 * phi(-near))


def _uniform_le_integral(t: float, p_lo: float, p_hi: float) -> float:
    """Integral of P(p' <= u) du from -inf to t, p' uniform on [p_lo, p_hi]."""
    w = p_hi - p_lo
    if t <= p_lo:
        return 0.0
    if t <= p_hi:
        return (t - p_lo) ** 2 / (2 * w)
    return w / 2 + (t - p_hi)


def p_decision(pval, alpha) -> Decision:
    """Compare a P-value set with a significance level (crisp or set).

    In the overlapping case the reject chance is P(p' <= a') for p' and a'
    uniform on the two hulls; with a crisp level this is the linear share
    (alpha - inf p) / (sup p - inf p).
    """
    pval, alpha = sv.as_setvalue(pval), sv.as_setvalue(alpha)
    p_lo, p_hi, a_lo, a_hi = pval.inf, pval.sup, alpha.inf, alpha.sup
    if p_hi <= a_lo:
        return _decide(1.0)
    if p_lo > a_hi:
        return _decide(0.0)
    if p_lo == p_hi:
        chance = (a_hi - p_lo) / (a_hi - a_lo)
    elif a_lo == a_hi:
        chance = (a_lo - p_lo) / (p_hi - p_lo)
    else:
        g = functools.partial(_uniform_le_integral, p_lo=p_lo, p_hi=p_hi)
        chance = (g(a_hi) - g(a_lo)) / (a_hi - a_lo)
    return _decide(chance)


# ---------------------------------------------------------------- intervals


@dataclass(frozen=True)
class ConfidenceInterval:
    interval: SetValue
    margin: SetValue
    critical: float
    checks: dict = field(default_factory=dict)
    notes: tuple = field(default_factory=tuple)


def _combine(center: SetValue, margin: SetValue) -> SetValue:
    """Hull of center - margin and center + margin."""
    return sv.Interval(center.inf - margin.sup, center.sup + margin.sup)


def ci_mean_z(xbar, spread, n, level=0.95, known_sigma: bool = False) -> ConfidenceInterval:
    """Large-sample interval xbar +/- z * spread / sqrt(n).

    With a sample spread every sample size must exceed 30; ``known_sigma``
    lifts that requirement.
    """
    xbar, spread, n = (sv.as_setvalue(v) for v in (xbar, spread, n))
    if not known_sigma and n.inf <= 30:
        raise SmallSample(f"large-sample interval needs n > 30, got {n}")
    if spread.inf <= 0:
        raise BadSpread(f"spread must be positive, got {spread}")
    z = z_crit(level)
    margin = sv.mul(Crisp(z), sv.div(spread, sv.sqrt(n)))
    return ConfidenceInterval(_combine(xbar, margin), margin, z, {"min_n": n.inf})


def ci_mean_t(xbar, s, n, level=0.95) -> ConfidenceInterval:
    """Small-sample interval using min(n) - 1 degrees of freedom."""
    xbar, s, n = (sv.as_setvalue(v) for v in (xbar, s, n))
    if n.inf < 2:
        raise BadN(f"t interval needs n >= 2, got {n}")
    if s.inf <= 0:
        raise BadSpread(f"spread must be positive, got {s}")
    df = int(math.floor(n.inf)) - 1
    t = t_crit(df, level)
    margin = sv.mul(Crisp(t), sv.div(s, sv.sqrt(n)))
    return ConfidenceInterval(_combine(xbar, margin), margin, t, {"df": df})


def ci_proportion(p, n, level=0.95) -> ConfidenceInterval:
    """p +/- z * sqrt(p (1 - p) / n), requiring min(n p) >= 5 and min(n (1 - p)) >= 5."""
    p, n = sv.as_setvalue(p), sv.as_setvalue(n)
    checks = {"min_np": n.inf * p.inf, "min_n_one_minus_p": n.inf * (1 - p.sup)}
    if checks["min_np"] < 5:
        raise PreconditionFailed(f"min(n p) = {checks['min_np']} < 5", bound="np")
    if checks["min_n_one_minus_p"] < 5:
        raise PreconditionFailed(
            f"min(n (1 - p)) = {checks['min_n_one_minus_p']} < 5", bound="n(1-p)"
        )
    z = z_crit(level)
    var = sv.div(sv.mul(p, sv.sub(Crisp(1.0), p)), n)
    margin = sv.mul(Crisp(z), sv.sqrt(var))
    return ConfidenceInterval(_combine(p, margin), margin, z, checks)


@dataclass(frozen=True)
class SampleSize:
    n_set: SetValue
    n_final: int
    notes: tuple = field(default_factory=tuple)


def _ceil(x: float) -> int:
    # guard against 96.00000000000001 style round-off
    return int(math.ceil(x - 1e-9 * max(1.0, abs(x))))


def sample_size_mean(sigma, B: float, level=0.95) -> SampleSize:
    """n = (z sigma / B)**2; the final size is the ceiling of its largest value."""
    if B <= 0:
        raise BadBound(f"bound must be positive, got {B}")
    sigma = sv.as_setvalue(sigma)
    z = z_crit(level)
    n_set = sv.power(sv.div(sv.mul(Crisp(z), sigma), Crisp(B)), 2)
    notes = (Note("SquaredForm", "sample size uses (z sigma / B) squared", {"z": z}),)
    return SampleSize(n_set, _ceil(n_set.sup), notes)


def range_sigma_estimate(high, low) -> SetValue:
    """sigma ~ range / 4 with range = high - low."""
    return sv.div(sv.sub(high, low), Crisp(4))


def _pq_image(pi: SetValue) -> SetValue:
    """True image of t (1 - t) over the hull of ``pi``."""
    f = lambda t: t * (1 - t)
    lo, hi = pi.inf, pi.sup
    top = 0.25 if lo <= 0.5 <= hi else max(f(lo), f(hi))
    return _span(min(f(lo), f(hi)), top)


def sample_size_proportion(pi=0.5, B: float = 0.05, level=0.95) -> SampleSize:
    """n = pi (1 - pi) (z / B)**2; pi = 0.5 gives the conservative size."""
    if B <= 0:
        raise BadBound(f"bound must be positive, got {B}")
    pi = sv.as_setvalue(pi)
    if pi.inf < 0 or pi.sup > 1:
        raise BadBound(f"proportion must lie in [0, 1], got {pi}")
    z = z_crit(level)
    n_set = sv.mul(_pq_image(pi), Crisp((z / B) ** 2))
    notes = ()
    if n_set.sup == 0:
        notes = (Note("MinimalSample", "proportion at 0 or 1 needs no sampling", {}),)
    return SampleSize(n_set, _ceil(n_set.sup), notes)


@dataclass(frozen=True)
class CLTParams:
    mu_xbar: SetValue
    sigma_xbar: SetValue
    applicable: bool


def clt_params(mu, sigma, n) -> CLTParams:
    mu, sigma, n = (sv.as_setvalue(v) for v in (mu, sigma, n))
    return CLTParams(mu, sv.div(sigma, sv.sqrt(n)), n.inf > 30)


__all__ = [
    "Alternative", "Hypothesis", "Verdict", "Decision", "ConfidenceInterval", "SampleSize",
    "CLTParams", "tables", "parse_level", "z_crit", "t_crit", "phi",
    "z_test_stat", "z_decision", "p_value", "p_decision",
    "ci_mean_z", "ci_mean_t", "ci_proportion",
    "sample_size_mean", "range_sigma_estimate", "sample_size_proportion", "clt_params",
]
