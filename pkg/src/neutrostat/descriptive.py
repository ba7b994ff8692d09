"""Descriptive statistics over set-valued and a+bI-valued samples."""
from __future__ import annotations

import itertools
import math
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import setval as sv
from .errors import (
    BadK,
    BadWeights,
    EmptyTable,
    NegativeFrequency,
    TooFewObservations,
)
from .neutro_num import NeutroNumber, as_nn, nn_mul, nn_sqrt_principal, nn_sub
from .setval import Crisp, SetValue


@dataclass(frozen=True)
class Dataset:
    observations: tuple
    label: str = ""

    def __post_init__(self):
        obs = tuple(sv.as_setvalue(o) for o in self.observations)
        if not obs:
            raise TooFewObservations("a dataset needs at least one observation")
        object.__setattr__(self, "observations", obs)

    def __len__(self):
        return len(self.observations)

    def __iter__(self):
        return iter(self.observations)


def _obs(d) -> list[SetValue]:
    obs = [sv.as_setvalue(o) for o in d]
    if not obs:
        raise TooFewObservations("no observations")
    return obs


def mean_set(d) -> SetValue:
    obs = _obs(d)
    return sv.div(sv.sum_sets(obs), Crisp(len(obs)))


def _middle(a: SetValue, b: SetValue) -> SetValue:
    return sv.div(sv.add(a, b), Crisp(2))


def median_set(d) -> SetValue:
    """Median under the midpoint order; the two middle sets are averaged for even n."""
    obs = sv.sorted_sets(_obs(d))
    n = len(obs)
    if n % 2:
        return obs[n // 2]
    return _middle(obs[n // 2 - 1], obs[n // 2])


def quartiles(d, method: str = "average") -> tuple[SetValue, SetValue, SetValue]:
    """Q1, Q2, Q3 at ranks i(n+1)/4.

    ``method="average"`` averages the two neighbours of a fractional rank,
    ``method="floor"`` takes the observation at the integer part of the rank.
    """
    obs = sv.sorted_sets(_obs(d))
    n = len(obs)
    if n < 3:
        raise TooFewObservations(f"quartiles need at least 3 observations, got {n}")
    if method not in ("average", "floor"):
        raise ValueError(f"unknown quartile method {method!r}")
    out = []
    for i in (1, 2, 3):
        lo, rem = divmod(i * (n + 1), 4)
        if rem == 0 or method == "floor":
            out.append(obs[lo - 1])
        else:
            out.append(_middle(obs[lo - 1], obs[lo]))
    return tuple(out)


def stddev_set(d) -> SetValue:
    """Population standard deviation (divides by n)."""
    obs = _obs(d)
    m = mean_set(obs)
    sq = sv.sum_sets(sv.power(sv.sub(x, m), 2) for x in obs)
    return sv.sqrt(sv.div(sq, Crisp(len(obs))))


# a + bI samples


def _nn_obs(d) -> list[NeutroNumber]:
    obs = [as_nn(o) for o in d]
    if not obs:
        raise TooFewObservations("no observations")
    return obs


def mean_nn(d) -> NeutroNumber:
    obs = _nn_obs(d)
    n = len(obs)
    return NeutroNumber(math.fsum(o.a for o in obs) / n, math.fsum(o.b for o in obs) / n)


def median_nn(d) -> NeutroNumber:
    """Sorted by determinate part, then by the coefficient of I."""
    obs = sorted(_nn_obs(d), key=lambda u: (u.a, u.b))
    n = len(obs)
    if n % 2:
        return obs[n // 2]
    lo, hi = obs[n // 2 - 1], obs[n // 2]
    return NeutroNumber((lo.a + hi.a) / 2, (lo.b + hi.b) / 2)


def variance_nn(d) -> NeutroNumber:
    obs = _nn_obs(d)
    m = mean_nn(obs)
    sq = [nn_mul(nn_sub(o, m), nn_sub(o, m)) for o in obs]
    return mean_nn(sq)


def stddev_nn(d) -> NeutroNumber:
    """Principal square root of the mean squared deviation."""
    return nn_sqrt_principal(variance_nn(d))


# frequency tables


@dataclass(frozen=True)
class FreqRow:
    category: str
    frequency: SetValue
    rel_freq: SetValue


@dataclass(frozen=True)
class FreqTable:
    rows: tuple
    total: FreqRow


def _ratio(num: float, den: float) -> float:
    return 0.0 if den == 0 else num / den


def _span(lo: float, hi: float) -> SetValue:
    return Crisp(lo) if lo == hi else sv.Interval(lo, hi)


def freq_table(rows: Iterable) -> FreqTable:
    """Relative frequencies bounded by letting each row vary independently.

    The smallest share of row i pairs its own minimum with every other row at
    its maximum; the largest share does the opposite.  This is tighter than
    dividing the row set by the total set.
    """
    rows = [(str(c), sv.as_setvalue(f)) for c, f in rows]
    if not rows:
        raise EmptyTable("frequency table has no rows")
    for c, f in rows:
        if f.inf < 0:
            raise NegativeFrequency(f"row {c!r} has negative frequency {f}")
    if all(f.sup == 0 for _, f in rows):
        raise EmptyTable("every frequency is zero")
    sum_inf = math.fsum(f.inf for _, f in rows)
    sum_sup = math.fsum(f.sup for _, f in rows)
    out = []
    for c, f in rows:
        others_sup = sum_sup - f.sup
        others_inf = sum_inf - f.inf
        lo = _ratio(f.inf, f.inf + others_sup)
        hi = _ratio(f.sup, f.sup + others_inf)
        out.append(FreqRow(c, f, _span(lo, hi)))
    total = FreqRow("Total", _span(sum_inf, sum_sup), sv.sum_sets(r.rel_freq for r in out))
    return FreqTable(tuple(out), total)


def naive_rel_freq(rows: Iterable) -> list[SetValue]:
    """Row frequency divided by the total frequency set (the looser bound)."""
    rows = [sv.as_setvalue(f) for _, f in rows]
    total = _span(math.fsum(f.inf for f in rows), math.fsum(f.sup for f in rows))
    return [sv.div(sv.hull(f), total) for f in rows]


# stem and leaf


def stem_and_leaf(pairs: Iterable) -> str:
    """Render (stem, leaf) pairs, one line per stem, leaves in midpoint order."""
    groups: dict[float, list[SetValue]] = {}
    for stem, leaf in pairs:
        groups.setdefault(float(stem), []).append(sv.as_setvalue(leaf))
    if not groups:
        return ""
    stems = sorted(groups)
    width = max(len(sv.format_number(s)) for s in stems)
    lines = []
    for s in stems:
        leaves = " ".join(str(x) for x in sv.sorted_sets(groups[s]))
        lines.append(f"{sv.format_number(s):>{width}} ‖ {leaves}")
    return "\n".join(lines)


# discarding k wrong observations


@dataclass(frozen=True)
class SubSample:
    wrong: tuple
    correct: tuple
    median: float
    mean: float
    deviations: tuple
    squared_deviations: tuple
    stddev: float


@dataclass(frozen=True)
class CombinedStats:
    interval_style: dict
    average_style: dict
    weighted_style: Optional[dict] = None


@dataclass(frozen=True)
class WrongObsResult:
    samples: tuple
    combined: CombinedStats


_METRICS = ("median", "mean", "stddev")


def weighted_average(values: Sequence[float], weights: Sequence[float]) -> float:
    if len(values) != len(weights) or not values:
        raise BadWeights(f"{len(weights)} weights for {len(values)} values")
    total = math.fsum(weights)
    if total <= 0:
        raise BadWeights("weights must have a positive sum")
    return math.fsum(w * v for w, v in zip(weights, values)) / total


def wrong_obs_enumerate(observations: Sequence[float], k: int, weights=None) -> WrongObsResult:
    """Recompute statistics for every way of discarding ``k`` observations.

    Observations are sorted first; subsamples are listed in lexicographic
    order of the discarded positions.  Weights, if given, attach to the
    subsamples in that order.
    """
    obs = sorted(float(x) for x in observations)
    n = len(obs)
    if n < 2:
        raise BadK(f"need at least 2 observations, got {n}")
    if not (1 <= k <= n - 1):
        raise BadK(f"k must lie in 1..{n - 1}, got {k}")
    samples = []
    for drop in itertools.combinations(range(n), k):
        keep = [x for i, x in enumerate(obs) if i not in drop]
        m = statistics.fmean(keep)
        dev = tuple(x - m for x in keep)
        samples.append(
            SubSample(
                wrong=tuple(obs[i] for i in drop),
                correct=tuple(keep),
                median=statistics.median(keep),
                mean=m,
                deviations=dev,
                squared_deviations=tuple(e * e for e in dev),
                stddev=statistics.pstdev(keep, mu=m),
            )
        )
    if weights is not None:
        weights = [float(w) for w in weights]
        if len(weights) != len(samples):
            raise BadWeights(f"expected {len(samples)} weights, got {len(weights)}")
        if any(w <= 0 for w in weights):
            raise BadWeights("weights must be positive")

    interval, average, weighted = {}, {}, {}
    for name in _METRICS:
        vals = [getattr(s, name) for s in samples]
        interval[name] = _span(min(vals), max(vals))
        average[name] = statistics.fmean(vals)
        if weights is not None:
            weighted[name] = weighted_average(vals, weights)
    combined = CombinedStats(interval, average, weighted if weights is not None else None)
    return WrongObsResult(tuple(samples), combined)


__all__ = [
    "Dataset", "FreqRow", "FreqTable", "SubSample", "CombinedStats", "WrongObsResult",
    "mean_set", "median_set", "quartiles", "stddev_set",
    "mean_nn", "median_nn", "variance_nn", "stddev_nn",
    "freq_table", "naive_rel_freq", "stem_and_leaf",
    "wrong_obs_enumerate", "weighted_average",
]
