"""Binomial and multinomial laws with an indeterminate outcome, and the normal
density with set-valued parameters.

Each trial ends in success (S), failure (F) or indeterminacy (I).  A run of
``n`` trials with more than ``th`` indeterminate trials counts as
indeterminate as a whole; otherwise it is classified by its success count.
The chances of S, I and F need not sum to 1.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from . import setval as sv
from .errors import BadComposition, BadCounts, BadSpread, OutOfRange, XOutOfRange, ZeroTotal
from .setval import SetValue


@dataclass(frozen=True)
class BinomialSpec:
    n: int
    th: int
    pS: float
    pI: float
    pF: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise OutOfRange(f"number of trials must be a positive integer, got {self.n}")
        if int(self.th) != self.th or not (0 <= self.th <= self.n):
            raise OutOfRange(f"threshold must lie in 0..{self.n}, got {self.th}")
        for name in ("pS", "pI", "pF"):
            p = getattr(self, name)
            if not (0.0 <= p <= 1.0):
                raise OutOfRange(f"{name} must lie in [0, 1], got {p}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "th", int(self.th))

    @property
    def total(self) -> float:
        return (self.pS + self.pI + self.pF) ** self.n


@dataclass(frozen=True)
class NeutroTriplet:
    T: float
    I: float
    F: float

    @property
    def total(self) -> float:
        return self.T + self.I + self.F

    def as_dict(self) -> dict:
        return {"T": self.T, "I": self.I, "F": self.F}


def normalize_triplet(t: NeutroTriplet) -> NeutroTriplet:
    s = t.total
    if s <= 0:
        raise ZeroTotal("cannot normalize a triplet with zero total")
    return NeutroTriplet(t.T / s, t.I / s, t.F / s)


class ProbabilityMode(enum.Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"
    PARACONSISTENT = "Paraconsistent"


def classify_mode(pS: float, pI: float, pF: float, tol: float = 1e-12) -> ProbabilityMode:
    s = pS + pI + pF
    if s < -tol or s > 3 + tol:
        raise OutOfRange(f"chances sum to {s}, outside [0, 3]")
    if abs(s - 1.0) <= tol:
        return ProbabilityMode.COMPLETE
    return ProbabilityMode.INCOMPLETE if s < 1 else ProbabilityMode.PARACONSISTENT


def _check_x(spec: BinomialSpec, x: int) -> int:
    if int(x) != x or not (0 <= x <= spec.n):
        raise XOutOfRange(f"x must lie in 0..{spec.n}, got {x}")
    return int(x)


def _t_direct(spec: BinomialSpec, x: int) -> float:
    n, f = spec.n, math.factorial
    inner = math.fsum(
        spec.pI**k * spec.pF ** (n - x - k) / (f(k) * f(n - x - k))
        for k in range(0, min(spec.th, n - x) + 1)
    )
    return f(n) / f(x) * spec.pS**x * inner


def _i_direct(spec: BinomialSpec) -> float:
    n, f = spec.n, math.factorial
    terms = []
    for z in range(spec.th + 1, n + 1):
        inner = math.fsum(
            spec.pS**k * spec.pF ** (n - z - k) / (f(k) * f(n - z - k)) for k in range(0, n - z + 1)
        )
        terms.append(f(n) / f(z) * spec.pI**z * inner)
    return math.fsum(terms)


def nbinomial_pmf(spec: BinomialSpec, x: int) -> NeutroTriplet:
    """(T_x, I_x, F_x) for exactly ``x`` successes.

    F_x sums T_y over y != x and is checked against the shortcut
    (pS + pI + pF)**n - T_x - I_x.
    """
    x = _check_x(spec, x)
    t = [_t_direct(spec, y) for y in range(spec.n + 1)]
    i = _i_direct(spec)
    fx = math.fsum(t[y] for y in range(spec.n + 1) if y != x)
    shortcut = spec.total - t[x] - i
    assert abs(fx - shortcut) <= 1e-9 * max(1.0, spec.total), "F routes disagree"
    return NeutroTriplet(t[x], i, fx)


def trinomial_A(n: int, alpha: int, beta: int, gamma: int, p1: float, i: float, p2: float) -> float:
    """n!/(alpha! beta! gamma!) * p1**alpha * i**beta * p2**gamma."""
    parts = (alpha, beta, gamma)
    if any(int(p) != p or p < 0 for p in parts) or sum(parts) != n:
        raise BadComposition(f"({alpha}, {beta}, {gamma}) is not a composition of {n}")
    f = math.factorial
    coef = f(n) // (f(alpha) * f(beta) * f(gamma))
    return coef * p1**alpha * i**beta * p2**gamma


def nbinomial_via_trinomial(spec: BinomialSpec, x: int) -> NeutroTriplet:
    """Same triplet assembled from trinomial terms A(successes, indeterminate, failures)."""
    x = _check_x(spec, x)
    n = spec.n

    def A(a, b, c):
        return trinomial_A(n, a, b, c, spec.pS, spec.pI, spec.pF)

    def T(y):
        return math.fsum(A(y, b, n - y - b) for b in range(0, min(spec.th, n - y) + 1))

    i = math.fsum(A(a, b, n - a - b) for b in range(spec.th + 1, n + 1) for a in range(0, n - b + 1))
    f = math.fsum(T(y) for y in range(n + 1) if y != x)
    return NeutroTriplet(T(x), i, f)


def nbinomial_table(spec: BinomialSpec) -> list[dict]:
    rows = []
    for x in range(spec.n + 1):
        t = nbinomial_pmf(spec, x)
        rows.append({"x": x, **t.as_dict(), "normalized": normalize_triplet(t).as_dict()})
    return rows


# multinomial


@dataclass(frozen=True)
class MultinomialSpec:
    n: int
    th: int
    P: tuple
    i: float

    def __post_init__(self):
        P = tuple(float(p) for p in self.P)
        object.__setattr__(self, "P", P)
        if int(self.n) != self.n or self.n < 1:
            raise OutOfRange(f"number of trials must be a positive integer, got {self.n}")
        if int(self.th) != self.th or not (0 <= self.th <= self.n):
            raise OutOfRange(f"threshold must lie in 0..{self.n}, got {self.th}")
        if len(P) < 2:
            raise OutOfRange("a multinomial needs at least two determinate events")
        if any(not (0 <= p <= 1) for p in P + (self.i,)):
            raise OutOfRange("chances must lie in [0, 1]")

    @property
    def total(self) -> float:
        return (math.fsum(self.P) + self.i) ** self.n


def multinomial_A(counts: Sequence[int], beta: int, P: Sequence[float], i: float) -> float:
    """n!/(x1! ... xr! beta!) * prod(Pj**xj) * i**beta with n = sum(counts) + beta."""
    f = math.factorial
    n = sum(counts) + beta
    coef = f(n)
    for c in list(counts) + [beta]:
        coef //= f(c)
    return coef * math.prod(p**c for p, c in zip(P, counts)) * i**beta


def _determinate_mass(spec: MultinomialSpec) -> float:
    s = math.fsum(spec.P)
    return math.fsum(math.comb(spec.n, b) * spec.i**b * s ** (spec.n - b) for b in range(spec.th + 1))


def nmultinomial_pmf(spec: MultinomialSpec, x: Sequence[int]) -> NeutroTriplet:
    """Triplet for the count vector ``x`` over the determinate events.

    The remaining n - sum(x) trials are indeterminate; the outcome is
    determinate only when that number does not exceed the threshold.  F is
    the determinate mass of every other count vector.
    """
    x = list(x)
    if len(x) != len(spec.P) or any(int(c) != c or c < 0 for c in x) or sum(x) > spec.n:
        raise BadCounts(f"counts {x} do not fit {len(spec.P)} events over {spec.n} trials")
    x = [int(c) for c in x]
    beta = spec.n - sum(x)
    t = multinomial_A(x, beta, spec.P, spec.i) if beta <= spec.th else 0.0
    indet = math.fsum(
        math.comb(spec.n, b) * spec.i**b * math.fsum(spec.P) ** (spec.n - b)
        for b in range(spec.th + 1, spec.n + 1)
    )
    return NeutroTriplet(t, indet, _determinate_mass(spec) - t)


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for c in cut:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


# normal with set-valued parameters


@dataclass(frozen=True)
class NormalSpec:
    mu: SetValue
    sigma: SetValue

    def __post_init__(self):
        object.__setattr__(self, "mu", sv.as_setvalue(self.mu))
        object.__setattr__(self, "sigma", sv.as_setvalue(self.sigma))
        if self.sigma.inf <= 0:
            raise BadSpread(f"standard deviation must be positive, got {self.sigma}")


_SQRT_2PI = math.sqrt(2 * math.pi)


def normal_pdf(x: float, mu: float, sigma: float) -> float:
    z = (x - mu) / sigma
    return math.exp(-0.5 * z * z) / (sigma * _SQRT_2PI)


def nnormal_pdf(spec: NormalSpec, x: float) -> SetValue:
    """Range of the normal density at ``x`` over every (mu, sigma) in the parameter hulls.

    For fixed sigma the density falls with |x - mu|.  For fixed distance d it
    peaks at sigma = d, so the maximum uses the sigma closest to d and the
    minimum sits at a sigma endpoint.
    """
    m1, m2 = spec.mu.inf, spec.mu.sup
    s1, s2 = spec.sigma.inf, spec.sigma.sup
    d_far = max(abs(x - m1), abs(x - m2))
    d_near = 0.0 if m1 <= x <= m2 else min(abs(x - m1), abs(x - m2))
    lo = min(normal_pdf(d_far, 0.0, s1), normal_pdf(d_far, 0.0, s2))
    best_sigma = min(max(d_near, s1), s2)
    hi = normal_pdf(d_near, 0.0, best_sigma)
    return sv.Crisp(lo) if lo == hi else sv.Interval(lo, hi)


def nnormal_sigma_band(spec: NormalSpec, k: int) -> SetValue:
    """mu +/- k sigma in set arithmetic: [inf mu - k sup sigma, sup mu + k sup sigma]."""
    if k <= 0:
        raise OutOfRange(f"band width must be positive, got {k}")
    w = k * spec.sigma.sup
    return sv.Interval(spec.mu.inf - w, spec.mu.sup + w)


__all__ = [
    "BinomialSpec", "NeutroTriplet", "ProbabilityMode", "MultinomialSpec", "NormalSpec",
    "nbinomial_pmf", "nbinomial_via_trinomial", "nbinomial_table", "normalize_triplet",
    "classify_mode", "trinomial_A", "multinomial_A", "nmultinomial_pmf", "compositions",
    "normal_pdf", "nnormal_pdf", "nnormal_sigma_band",
]
