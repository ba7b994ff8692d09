"""Least squares on set-valued points.

The classical formulas are evaluated with set arithmetic, so intercept and
slope come out as sets and the fitted "line" is a strip between two lines.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import setval as sv
from .errors import DegenerateVariance, DegenerateX, PointOutsideSet, TooFewPoints
from .notes import Note
from .setval import Crisp, SetValue


@dataclass(frozen=True)
class SetPoint:
    x: SetValue
    y: SetValue

    def __post_init__(self):
        object.__setattr__(self, "x", sv.as_setvalue(self.x))
        object.__setattr__(self, "y", sv.as_setvalue(self.y))


def as_points(points: Iterable) -> list[SetPoint]:
    return [p if isinstance(p, SetPoint) else SetPoint(*p) for p in points]


@dataclass(frozen=True)
class Sums:
    n: int
    Sx: SetValue
    Sy: SetValue
    Sxx: SetValue
    Sxy: SetValue
    Syy: SetValue

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("Sx", "Sy", "Sxx", "Sxy", "Syy")}


def column_sums(points) -> Sums:
    pts = as_points(points)
    return Sums(
        n=len(pts),
        Sx=sv.sum_sets(p.x for p in pts),
        Sy=sv.sum_sets(p.y for p in pts),
        Sxx=sv.sum_sets(sv.power(p.x, 2) for p in pts),
        Sxy=sv.sum_sets(sv.mul(p.x, p.y) for p in pts),
        Syy=sv.sum_sets(sv.power(p.y, 2) for p in pts),
    )


@dataclass(frozen=True)
class LinearModel:
    intercept_a: SetValue
    slope_b: SetValue
    sums: Optional[Sums] = None
    n: int = 0

    @classmethod
    def from_coefficients(cls, a, b) -> "LinearModel":
        return cls(sv.as_setvalue(a), sv.as_setvalue(b))


def ls_fit(points) -> LinearModel:
    """b = (Sxy - Sx Sy / n) / (Sxx - Sx**2 / n), a = mean(y) - b mean(x)."""
    pts = as_points(points)
    if len(pts) < 2:
        raise TooFewPoints(f"need at least 2 points, got {len(pts)}")
    s = column_sums(pts)
    n = Crisp(s.n)
    num = sv.sub(s.Sxy, sv.div(sv.mul(s.Sx, s.Sy), n))
    den = sv.sub(s.Sxx, sv.div(sv.power(s.Sx, 2), n))
    if den.inf <= 0 <= den.sup:
        raise DegenerateX(f"slope denominator {den} contains 0")
    b = sv.div(num, den)
    a = sv.sub(sv.div(s.Sy, n), sv.mul(b, sv.div(s.Sx, n)))
    return LinearModel(a, b, s, s.n)


def predict(m: LinearModel, x) -> SetValue:
    return sv.add(m.intercept_a, sv.mul(m.slope_b, x))


def residuals(points, m: LinearModel) -> list[SetValue]:
    return [sv.sub(p.y, predict(m, p.x)) for p in as_points(points)]


def coverage_check(points, m: LinearModel) -> list[bool]:
    """Whether each observed y lies inside the hull of its prediction."""
    return [p.y.within(predict(m, p.x)) for p in as_points(points)]


def nss_resid_midpoint(points, m: LinearModel) -> float:
    return math.fsum(r.midpoint**2 for r in residuals(points, m))


def nss_resid_set(points, m: LinearModel) -> SetValue:
    """Syy - a Sy - b Sxy."""
    s = column_sums(points)
    return sv.sub(sv.sub(s.Syy, sv.mul(m.intercept_a, s.Sy)), sv.mul(m.slope_b, s.Sxy))


def nss_to(points) -> SetValue:
    """Syy - Sy**2 / n."""
    s = column_sums(points)
    return sv.sub(s.Syy, sv.div(sv.power(s.Sy, 2), Crisp(s.n)))


@dataclass(frozen=True)
class BoundedResult:
    """A set-valued coefficient with its range-restricted version."""

    raw: SetValue
    clipped: Optional[SetValue]
    notes: tuple = field(default_factory=tuple)


def r_squared(resid, to) -> BoundedResult:
    """1 - resid / to, plus the part of it inside [0, 1].

    The lower endpoint uses the smallest total sum of squares and the upper
    endpoint the largest; a note records both denominators.
    """
    resid, to = sv.as_setvalue(resid), sv.as_setvalue(to)
    raw = sv.sub(Crisp(1.0), sv.div(resid, to))
    notes = [
        Note(
            "EndpointPairing",
            "lower endpoint divides by the largest residual sum and smallest total sum; "
            "upper endpoint by the smallest residual sum and largest total sum",
            {
                "lower": raw.inf,
                "lower_denominator": to.inf,
                "upper": raw.sup,
                "upper_denominator": to.sup,
            },
        )
    ]
    clipped = sv.clip(raw, 0.0, 1.0)
    if clipped is None or not sv.close_enough(clipped, raw, rel=0, abs_tol=0):
        notes.append(Note("Clipped", "raw value leaves [0, 1]", {"raw": [raw.inf, raw.sup]}))
    return BoundedResult(raw, clipped, tuple(notes))


def correlation(points) -> BoundedResult:
    """(n Sxy - Sx Sy) / sqrt((n Sxx - Sx**2)(n Syy - Sy**2)), then restricted to [-1, 1]."""
    s = column_sums(points)
    n = Crisp(s.n)
    num = sv.sub(sv.mul(n, s.Sxy), sv.mul(s.Sx, s.Sy))
    dx = sv.sub(sv.mul(n, s.Sxx), sv.power(s.Sx, 2))
    dy = sv.sub(sv.mul(n, s.Syy), sv.power(s.Sy, 2))
    for name, d in (("x", dx), ("y", dy)):
        if d.inf <= 0:
            raise DegenerateVariance(f"spread of {name} {d} is not positive")
    product = sv.mul(dx, dy)
    raw = sv.div(num, sv.sqrt(product))
    notes = [
        Note(
            "Terms",
            "numerator, spread terms and their product",
            {"numerator": str(num), "x_term": str(dx), "y_term": str(dy), "product": str(product)},
        )
    ]
    clipped = sv.clip(raw, -1.0, 1.0)
    if clipped is None or not sv.close_enough(clipped, raw, rel=0, abs_tol=0):
        notes.append(Note("Clipped", "raw value leaves [-1, 1]", {"raw": [raw.inf, raw.sup]}))
    return BoundedResult(raw, clipped, tuple(notes))


def deneutrosify(m: LinearModel, strategy="midpoint") -> tuple[float, float]:
    """Crisp (a, b): midpoints, or caller-chosen points checked for membership."""
    if strategy == "midpoint":
        return m.intercept_a.midpoint, m.slope_b.midpoint
    a0, b0 = strategy
    for name, v, s in (("intercept", a0, m.intercept_a), ("slope", b0, m.slope_b)):
        if not s.contains(v):
            raise PointOutsideSet(f"{name} {v} is not in {s}")
    return float(a0), float(b0)


def midpoint_report(points, m: LinearModel) -> list[tuple[float, float]]:
    pts = as_points(points)
    return [(predict(m, p.x).midpoint, r.midpoint) for p, r in zip(pts, residuals(pts, m))]


class ScatterKind(enum.Enum):
    POINT = "Point"
    SEGMENT_X = "SegmentX"
    SEGMENT_Y = "SegmentY"
    RECTANGLE = "Rectangle"


@dataclass(frozen=True)
class ScatterObject:
    kind: ScatterKind
    x: SetValue
    y: SetValue


def scatter_objects(points) -> list[ScatterObject]:
    out = []
    for p in as_points(points):
        xs, ys = not p.x.is_crisp, not p.y.is_crisp
        if xs and ys:
            kind = ScatterKind.RECTANGLE
        elif xs:
            kind = ScatterKind.SEGMENT_X
        elif ys:
            kind = ScatterKind.SEGMENT_Y
        else:
            kind = ScatterKind.POINT
        out.append(ScatterObject(kind, p.x, p.y))
    return out


def strip_lines(m: LinearModel) -> tuple[tuple[float, float], tuple[float, float]]:
    """(intercept, slope) of the lower and upper boundary lines for x >= 0."""
    return (m.intercept_a.inf, m.slope_b.inf), (m.intercept_a.sup, m.slope_b.sup)


__all__ = [
    "SetPoint", "Sums", "LinearModel", "BoundedResult", "ScatterKind", "ScatterObject",
    "as_points", "column_sums", "ls_fit", "predict", "residuals", "coverage_check",
    "nss_resid_midpoint", "nss_resid_set", "nss_to", "r_squared", "correlation",
    "deneutrosify", "midpoint_report", "scatter_objects", "strip_lines",
]
