"""Numbers of the form a + bI with I*I = I, and their complex counterparts.

Useful identity: (x + yI)**n = x**n + ((x + y)**n - x**n) I, so every power,
root and quotient reduces to two ordinary real problems, one for the
determinate part ``x`` and one for the "I = 1" value ``x + y``.
"""
from __future__ import annotations

import cmath
import itertools
import math
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import NoRealRoot, ParseError, UndefinedDivision
from .setval import format_number, real_root


def _close(u: float, v: float, tol: float = 1e-9) -> bool:
    return abs(u - v) <= tol * max(1.0, abs(u), abs(v))


@dataclass(frozen=True)
class NeutroNumber:
    a: float
    b: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a) + 0.0)
        object.__setattr__(self, "b", float(self.b) + 0.0)

    @property
    def total(self) -> float:
        """Value obtained by substituting I = 1."""
        return self.a + self.b

    def isclose(self, other, tol: float = 1e-9) -> bool:
        other = as_nn(other)
        return _close(self.a, other.a, tol) and _close(self.b, other.b, tol)

    def __add__(self, other):
        return nn_add(self, other)

    def __radd__(self, other):
        return nn_add(other, self)

    def __sub__(self, other):
        return nn_sub(self, other)

    def __rsub__(self, other):
        return nn_sub(other, self)

    def __mul__(self, other):
        return nn_mul(self, other)

    def __rmul__(self, other):
        return nn_mul(other, self)

    def __truediv__(self, other):
        return nn_div(self, other)

    def __rtruediv__(self, other):
        return nn_div(other, self)

    def __pow__(self, n):
        return nn_pow(self, n)

    def __neg__(self):
        return NeutroNumber(-self.a, -self.b)

    def __str__(self):
        return format_nn(self)

    @classmethod
    def parse(cls, text: str) -> "NeutroNumber":
        return parse_nn(text)


I = NeutroNumber(0.0, 1.0)


def as_nn(x) -> NeutroNumber:
    if isinstance(x, NeutroNumber):
        return x
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return NeutroNumber(x, 0.0)
    if isinstance(x, str):
        return parse_nn(x)
    raise TypeError(f"cannot interpret {x!r} as a neutrosophic number")


def nn_add(u, v) -> NeutroNumber:
    u, v = as_nn(u), as_nn(v)
    return NeutroNumber(u.a + v.a, u.b + v.b)


def nn_sub(u, v) -> NeutroNumber:
    u, v = as_nn(u), as_nn(v)
    return NeutroNumber(u.a - v.a, u.b - v.b)


def nn_mul(u, v) -> NeutroNumber:
    u, v = as_nn(u), as_nn(v)
    return NeutroNumber(u.a * v.a, u.a * v.b + v.a * u.b + u.b * v.b)


def nn_div(u, v) -> NeutroNumber:
    """Solve (x + yI)(a2 + b2 I) = a1 + b1 I for x, y.

    Needs a2 != 0 and a2 + b2 != 0; otherwise the system has no unique
    solution and the quotient is undefined (this covers kI and a - aI divisors).
    """
    u, v = as_nn(u), as_nn(v)
    if v.a == 0:
        raise UndefinedDivision(f"cannot divide {u} by {v}", reason="divisor has zero determinate part")
    if v.a + v.b == 0:
        raise UndefinedDivision(f"cannot divide {u} by {v}", reason="divisor vanishes at I = 1")
    x = u.a / v.a
    y = (v.a * u.b - u.a * v.b) / (v.a * (v.a + v.b))
    return NeutroNumber(x, y)


def nn_pow(u, n: int) -> NeutroNumber:
    if int(n) != n or n < 0:
        raise ValueError("exponent must be a nonnegative integer")
    n = int(n)
    u = as_nn(u)
    if n == 0:
        return NeutroNumber(1.0, 0.0)
    xn = u.a**n
    return NeutroNumber(xn, u.total**n - xn)


def nn_nth_root(u, n: int) -> list[NeutroNumber]:
    """All real n-th roots of ``u``.

    ``x**n = a`` fixes the determinate part and ``(x + y)**n = a + b`` fixes
    the value at I = 1; for even n both carry a sign choice, giving up to four
    roots.
    """
    if int(n) != n or n < 2:
        raise ValueError("root index must be an integer >= 2")
    n = int(n)
    u = as_nn(u)
    if n % 2 == 0:
        if u.a < 0 or u.total < 0:
            raise NoRealRoot(f"{u} has no real root of even index {n}")
        ra, rt = real_root(u.a, n), real_root(u.total, n)
        # keep the order (x, +t), (x, -t), (-x, -t), (-x, +t)
        pairs = [(ra, rt), (ra, -rt), (-ra, -rt), (-ra, rt)]
    else:
        pairs = [(real_root(u.a, n), real_root(u.total, n))]
    roots: list[NeutroNumber] = []
    for x, t in pairs:
        cand = NeutroNumber(x, t - x)
        if not any(cand.isclose(r, 1e-12) for r in roots):
            roots.append(cand)
    return roots


def nn_sqrt(u) -> list[NeutroNumber]:
    return nn_nth_root(u, 2)


def nn_sqrt_principal(u) -> NeutroNumber:
    """Root with x >= 0 and x + y >= 0, the branch used for standard deviations."""
    u = as_nn(u)
    if u.a < 0 or u.total < 0:
        raise NoRealRoot(f"{u} has no real square root")
    x = math.sqrt(u.a)
    return NeutroNumber(x, math.sqrt(u.total) - x)


# --------------------------------------------------------------------------
# text form

_TERM = re.compile(r"\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(iI|Ii|i|I)?")


def _parse_terms(text: str, suffixes: Sequence[str]) -> dict[str, float]:
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty input", str(text), 0)
    out = {s: 0.0 for s in suffixes}
    pos, first = 0, True
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TERM.match(stripped, pos)
        sign, num, suffix = m.group(1), m.group(2), m.group(3) or ""
        if suffix == "Ii":
            suffix = "iI"
        if (not num and not suffix) or (not sign and not first) or suffix not in out:
            raise ParseError("malformed neutrosophic number", text, pos)
        value = float(num) if num else 1.0
        out[suffix] += -value if sign == "-" else value
        pos, first = m.end(), False
    return out


def parse_nn(text: str) -> NeutroNumber:
    """Parse ``a+bI`` forms such as ``-5+2.333I``, ``3I``, ``7`` or ``2-I``."""
    t = _parse_terms(text, ("", "I"))
    return NeutroNumber(t[""], t["I"])


def _coef(b: float, symbol: str, fmt=format_number) -> str:
    if b == 1:
        return symbol
    if b == -1:
        return "-" + symbol
    return fmt(b) + symbol


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def format_nn(u: NeutroNumber, fmt=format_number) -> str:
    terms = []
    if u.a != 0:
        terms.append(fmt(u.a))
    if u.b != 0:
        terms.append(_coef(u.b, "I", fmt))
    return _join(terms)


# --------------------------------------------------------------------------
# complex


def _as_complex(z) -> complex:
    if isinstance(z, (tuple, list)):
        return complex(z[0], z[1])
    return complex(z)


def _snap(z: complex, scale: float) -> complex:
    eps = 1e-14 * max(1.0, scale)
    re_, im = z.real, z.imag
    return complex(0.0 if abs(re_) < eps else re_, 0.0 if abs(im) < eps else im)


def complex_sqrt(z) -> list[complex]:
    """Both square roots, principal root first."""
    z = _as_complex(z)
    r = _snap(cmath.sqrt(z), abs(z))
    if r == 0:
        return [0j]
    return [r, -r]


def complex_nth_root(z, n: int) -> list[complex]:
    """All ``n`` roots from the polar form, principal root first."""
    if int(n) != n or n < 2:
        raise ValueError("root index must be an integer >= 2")
    n = int(n)
    z = _as_complex(z)
    if z == 0:
        return [0j]
    mod = abs(z) ** (1.0 / n)
    theta = cmath.phase(z)
    return [_snap(cmath.rect(mod, (theta + 2 * math.pi * k) / n), mod) for k in range(n)]


@dataclass(frozen=True)
class NeutroComplex:
    """a + b i + c I + d iI."""

    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, float(getattr(self, f)) + 0.0)

    @property
    def determinate(self) -> complex:
        return complex(self.a, self.b)

    @property
    def indeterminate(self) -> complex:
        return complex(self.c, self.d)

    @classmethod
    def from_parts(cls, det: complex, ind: complex) -> "NeutroComplex":
        return cls(det.real, det.imag, ind.real, ind.imag)

    def __mul__(self, other):
        u, v = self.determinate, self.indeterminate
        p, q = other.determinate, other.indeterminate
        return NeutroComplex.from_parts(u * p, u * q + v * p + v * q)

    def __add__(self, other):
        return NeutroComplex(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def isclose(self, other, tol: float = 1e-9) -> bool:
        return all(_close(getattr(self, f), getattr(other, f), tol) for f in "abcd")

    def __str__(self):
        return format_ncomplex(self)

    @classmethod
    def parse(cls, text: str) -> "NeutroComplex":
        return parse_ncomplex(text)


def parse_ncomplex(text: str) -> NeutroComplex:
    t = _parse_terms(text, ("", "i", "I", "iI"))
    return NeutroComplex(t[""], t["i"], t["I"], t["iI"])


def format_ncomplex(q: NeutroComplex, fmt=format_number) -> str:
    terms = []
    if q.a != 0:
        terms.append(fmt(q.a))
    for coef, sym in ((q.b, "i"), (q.c, "I"), (q.d, "iI")):
        if coef != 0:
            terms.append(_coef(coef, sym, fmt))
    return _join(terms)


def ncomplex_sqrt(q: NeutroComplex) -> list[NeutroComplex]:
    """All square roots U + V I of ``q``.

    With I*I = I, (U + V I)**2 = U**2 + ((U + V)**2 - U**2) I, so U is a
    complex root of the determinate part and U + V a complex root of the
    value at I = 1.  Complex roots always exist, so this never fails.
    """
    det = q.determinate
    total = det + q.indeterminate
    out: list[NeutroComplex] = []
    for u in complex_sqrt(det):
        for w in complex_sqrt(total):
            cand = NeutroComplex.from_parts(u, w - u)
            if not any(cand.isclose(r, 1e-12) for r in out):
                out.append(cand)
    return out


# --------------------------------------------------------------------------
# quadratics


@dataclass(frozen=True)
class NeutroQuadratic:
    """coeff2 x**2 + coeff1 x + coeff0 with neutrosophic coefficients."""

    coeff2: NeutroNumber
    coeff1: NeutroNumber
    coeff0: NeutroNumber

    def __post_init__(self):
        for f in ("coeff2", "coeff1", "coeff0"):
            object.__setattr__(self, f, as_nn(getattr(self, f)))
        if self.coeff2.a == 0 and self.coeff2.b == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def coeffs(self) -> list[NeutroNumber]:
        return [self.coeff2, self.coeff1, self.coeff0]


@dataclass(frozen=True)
class Factoring:
    leading: NeutroNumber
    root1: NeutroNumber
    root2: NeutroNumber

    def expand(self) -> list[NeutroNumber]:
        s = nn_add(self.root1, self.root2)
        p = nn_mul(self.root1, self.root2)
        return [self.leading, nn_mul(self.leading, -s), nn_mul(self.leading, p)]

    def __str__(self):
        return f"({self.leading})(x - ({self.root1}))(x - ({self.root2}))"


def nn_poly_eval(coeffs, x) -> NeutroNumber:
    """Horner evaluation; ``coeffs`` run from the highest degree down."""
    if isinstance(coeffs, NeutroQuadratic):
        coeffs = coeffs.coeffs
    x = as_nn(x)
    acc = NeutroNumber(0.0, 0.0)
    for c in coeffs:
        acc = nn_add(nn_mul(acc, x), as_nn(c))
    return acc


def _is_zero(u: NeutroNumber, scale: float, tol: float = 1e-9) -> bool:
    return abs(u.a) <= tol * scale and abs(u.b) <= tol * scale


def _scale(coeffs) -> float:
    return max([1.0] + [abs(v) for c in coeffs for v in (c.a, c.b)])


def nn_quadratic_solve(q: NeutroQuadratic) -> list[NeutroNumber]:
    """Quadratic formula run over every square-root branch of the discriminant."""
    A, B, C = q.coeffs
    disc = nn_sub(nn_mul(B, B), nn_mul(NeutroNumber(4.0), nn_mul(A, C)))
    two_a = nn_mul(NeutroNumber(2.0), A)
    scale = _scale(q.coeffs)
    roots: list[NeutroNumber] = []
    for r in nn_sqrt(disc):
        x = nn_div(nn_add(-B, r), two_a)
        if not _is_zero(nn_poly_eval(q, x), scale * max(1.0, abs(x.a), abs(x.b)) ** 2):
            continue
        if not any(x.isclose(y) for y in roots):
            roots.append(x)
    return roots


def nn_factorings(q: NeutroQuadratic) -> list[Factoring]:
    """Every root pair whose product form reproduces ``q``.

    Unlike real quadratics these need not be unique.
    """
    roots = nn_quadratic_solve(q)
    scale = _scale(q.coeffs)
    out = []
    for i, j in itertools.combinations_with_replacement(range(len(roots)), 2):
        f = Factoring(q.coeff2, roots[i], roots[j])
        if all(_is_zero(nn_sub(e, c), scale) for e, c in zip(f.expand(), q.coeffs)):
            out.append(f)
    return out


__all__ = [
    "NeutroNumber", "NeutroComplex", "NeutroQuadratic", "Factoring", "I",
    "as_nn", "nn_add", "nn_sub", "nn_mul", "nn_div", "nn_pow",
    "nn_sqrt", "nn_sqrt_principal", "nn_nth_root",
    "complex_sqrt", "complex_nth_root", "ncomplex_sqrt",
    "nn_poly_eval", "nn_quadratic_solve", "nn_factorings",
    "parse_nn", "format_nn", "parse_ncomplex", "format_ncomplex",
]
