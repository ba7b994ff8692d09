"""Set values: crisp numbers, intervals, finite sets and their unions.

Arithmetic follows two rules:

* Crisp and finite operands combine exactly, element by element.
* As soon as an interval or a union is involved, the result is the closed
  hull ``[inf, sup]`` of the true Minkowski result.

Open/closed endpoint flags are kept for display only; arithmetic always works
on closed hulls.  A result interval is printed open when any operand carried an
open endpoint.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union as _TUnion

from .errors import DivisorContainsZero, NegativeUnderEvenRoot, ParseError

Number = _TUnion[int, float]


class SetValue:
    """Common behaviour of every set-value variant."""

    __slots__ = ()

    # concrete classes implement these
    def pieces(self) -> list[tuple[float, float]]:
        raise NotImplementedError

    @property
    def inf(self) -> float:
        return min(lo for lo, _ in self.pieces())

    @property
    def sup(self) -> float:
        return max(hi for _, hi in self.pieces())

    @property
    def midpoint(self) -> float:
        return (self.inf + self.sup) / 2

    @property
    def has_open(self) -> bool:
        return False

    @property
    def is_crisp(self) -> bool:
        return isinstance(self, Crisp)

    def hull(self) -> "SetValue":
        return hull(self)

    def contains(self, x: float) -> bool:
        return contains(self, x)

    def within(self, other: "SetValue") -> bool:
        """True when the closed hull of ``self`` lies inside the closed hull of ``other``."""
        other = as_setvalue(other)
        return other.inf <= self.inf and self.sup <= other.sup

    def __str__(self) -> str:
        return format_setvalue(self)

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __pow__(self, n: int):
        return power(self, n)

    def __neg__(self):
        return mul(Crisp(-1.0), self)


@dataclass(frozen=True, eq=True)
class Crisp(SetValue):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value) + 0.0)

    def pieces(self):
        return [(self.value, self.value)]

    @property
    def inf(self):
        return self.value

    @property
    def sup(self):
        return self.value


@dataclass(frozen=True, eq=True)
class Interval(SetValue):
    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        lo, hi = float(self.lo) + 0.0, float(self.hi) + 0.0
        if math.isnan(lo) or math.isnan(hi) or lo > hi:
            raise ValueError(f"invalid interval bounds ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo == hi:
            object.__setattr__(self, "lo_open", False)
            object.__setattr__(self, "hi_open", False)

    def pieces(self):
        return [(self.lo, self.hi)]

    @property
    def inf(self):
        return self.lo

    @property
    def sup(self):
        return self.hi

    @property
    def has_open(self):
        return self.lo_open or self.hi_open


@dataclass(frozen=True, eq=True)
class Finite(SetValue):
    elements: tuple

    def __post_init__(self):
        elems = tuple(sorted({float(e) + 0.0 for e in self.elements}))
        if not elems:
            raise ValueError("a finite set needs at least one element")
        object.__setattr__(self, "elements", elems)

    def pieces(self):
        return [(e, e) for e in self.elements]

    @property
    def inf(self):
        return self.elements[0]

    @property
    def sup(self):
        return self.elements[-1]


@dataclass(frozen=True, eq=True)
class Union(SetValue):
    parts: tuple

    def pieces(self):
        out = []
        for p in self.parts:
            out.extend(p.pieces())
        return out

    @property
    def has_open(self):
        return any(p.has_open for p in self.parts)


# --------------------------------------------------------------------------
# construction helpers


def as_setvalue(x) -> SetValue:
    if isinstance(x, SetValue):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not set values")
    if isinstance(x, (int, float)):
        return Crisp(x)
    if isinstance(x, str):
        return parse_setvalue(x)
    raise TypeError(f"cannot interpret {x!r} as a set value")


def finite(*elements: Number) -> SetValue:
    """Finite set; a singleton collapses to :class:`Crisp`."""
    f = Finite(tuple(elements))
    if len(f.elements) == 1:
        return Crisp(f.elements[0])
    return f


def interval(lo: Number, hi: Number, lo_open=False, hi_open=False) -> Interval:
    return Interval(lo, hi, lo_open, hi_open)


def union(*parts) -> SetValue:
    """Build a canonical union: overlapping parts merged, points absorbed.

    The result is a plain Crisp/Interval/Finite when only one part survives.
    """
    points: list[float] = []
    spans: list[list] = []  # [lo, hi, lo_open, hi_open]
    for p in parts:
        p = as_setvalue(p)
        if isinstance(p, Union):
            p = union(*p.parts)
            sub_parts = p.parts if isinstance(p, Union) else (p,)
        else:
            sub_parts = (p,)
        for q in sub_parts:
            if isinstance(q, Interval):
                if q.lo == q.hi:
                    points.append(q.lo)
                else:
                    spans.append([q.lo, q.hi, q.lo_open, q.hi_open])
            else:
                points.extend(e for e, _ in q.pieces())

    spans.sort(key=lambda s: (s[0], s[2]))
    merged: list[list] = []
    for s in spans:
        if merged:
            m = merged[-1]
            touching = s[0] < m[1] or (s[0] == m[1] and not (s[2] and m[3]))
            if touching:
                if s[1] > m[1] or (s[1] == m[1] and not s[3]):
                    m[1], m[3] = s[1], s[3]
                continue
        merged.append(list(s))

    def absorbed(x):
        for lo, hi, lo_open, hi_open in merged:
            if (lo < x < hi) or (x == lo and not lo_open) or (x == hi and not hi_open):
                return True
        return False

    # a point sitting on an open endpoint closes it
    for x in points:
        for m in merged:
            if x == m[0] and m[2]:
                m[2] = False
            if x == m[1] and m[3]:
                m[3] = False
    free = sorted({x for x in points if not absorbed(x)})

    atoms: list[tuple[float, object]] = [(m[0], Interval(*m)) for m in merged]
    atoms += [(x, x) for x in free]
    atoms.sort(key=lambda a: (a[0], isinstance(a[1], Interval)))

    out: list[SetValue] = []
    run: list[float] = []
    for _, a in atoms:
        if isinstance(a, Interval):
            if run:
                out.append(finite(*run))
                run = []
            out.append(a)
        else:
            run.append(a)
    if run:
        out.append(finite(*run))
    if not out:
        raise ValueError("empty union")
    if len(out) == 1:
        return out[0]
    return Union(tuple(out))


# --------------------------------------------------------------------------
# reductions


def infimum(s) -> float:
    return as_setvalue(s).inf


def supremum(s) -> float:
    return as_setvalue(s).sup


def midpoint(s) -> float:
    return as_setvalue(s).midpoint


def hull(s) -> Interval:
    s = as_setvalue(s)
    return Interval(s.inf, s.sup)


def contains(s, x: float) -> bool:
    s = as_setvalue(s)
    if isinstance(s, Crisp):
        return x == s.value
    if isinstance(s, Finite):
        return x in s.elements
    if isinstance(s, Interval):
        above = x > s.lo or (x == s.lo and not s.lo_open)
        below = x < s.hi or (x == s.hi and not s.hi_open)
        return above and below
    return any(contains(p, x) for p in s.parts)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def sort_key(s) -> tuple[float, float]:
    """Key of the midpoint total order (midpoint first, infimum breaks ties)."""
    s = as_setvalue(s)
    return (s.midpoint, s.inf)


def order_cmp(s1, s2) -> Ordering:
    k1, k2 = sort_key(s1), sort_key(s2)
    if k1 < k2:
        return Ordering.LESS
    if k1 > k2:
        return Ordering.GREATER
    return Ordering.EQUAL


def sorted_sets(values: Iterable) -> list[SetValue]:
    return sorted((as_setvalue(v) for v in values), key=sort_key)


# --------------------------------------------------------------------------
# arithmetic


def _discrete(s: SetValue) -> bool:
    return isinstance(s, (Crisp, Finite))


def _elements(s: SetValue) -> tuple:
    return (s.value,) if isinstance(s, Crisp) else s.elements


def _hull_result(lo: float, hi: float, *operands: SetValue) -> Interval:
    flag = any(o.has_open for o in operands)
    return Interval(lo, hi, flag, flag)


def _piece_op(op: str, p, q) -> tuple[float, float]:
    (l1, h1), (l2, h2) = p, q
    if op == "+":
        return l1 + l2, h1 + h2
    if op == "-":
        return l1 - h2, h1 - l2
    if op == "*":
        c = (l1 * l2, l1 * h2, h1 * l2, h1 * h2)
        return min(c), max(c)
    if l2 <= 0.0 <= h2:
        raise DivisorContainsZero("divisor set contains 0")
    c = (l1 / l2, l1 / h2, h1 / l2, h1 / h2)
    return min(c), max(c)


_SCALAR = {
    "+": lambda x, y: x + y,
    "-": lambda x, y: x - y,
    "*": lambda x, y: x * y,
    "/": lambda x, y: x / y,
}


def _binary(op: str, s1, s2) -> SetValue:
    a, b = as_setvalue(s1), as_setvalue(s2)
    if _discrete(a) and _discrete(b):
        if op == "/" and 0.0 in _elements(b):
            raise DivisorContainsZero("divisor set contains 0")
        f = _SCALAR[op]
        return finite(*(f(x, y) for x in _elements(a) for y in _elements(b)))
    lo, hi = math.inf, -math.inf
    for p in a.pieces():
        for q in b.pieces():
            l, h = _piece_op(op, p, q)
            lo, hi = min(lo, l), max(hi, h)
    return _hull_result(lo, hi, a, b)


def add(s1, s2) -> SetValue:
    return _binary("+", s1, s2)


def sub(s1, s2) -> SetValue:
    return _binary("-", s1, s2)


def mul(s1, s2) -> SetValue:
    return _binary("*", s1, s2)


def div(s1, s2) -> SetValue:
    return _binary("/", s1, s2)


def _piece_pow(lo: float, hi: float, n: int) -> tuple[float, float]:
    if n % 2 == 1 or lo >= 0:
        return lo**n, hi**n
    if hi <= 0:
        return hi**n, lo**n
    return 0.0, max(-lo, hi) ** n


def power(s, n: int) -> SetValue:
    """True image ``{x**n : x in s}`` (not repeated multiplication)."""
    if int(n) != n or n < 1:
        raise ValueError("power needs a positive integer exponent")
    n = int(n)
    s = as_setvalue(s)
    if _discrete(s):
        return finite(*(x**n for x in _elements(s)))
    images = [_piece_pow(lo, hi, n) for lo, hi in s.pieces()]
    return _hull_result(min(i[0] for i in images), max(i[1] for i in images), s)


def real_root(x: float, n: int) -> float:
    """Real ``n``-th root, sign preserving for odd ``n``."""
    if n == 2:
        return math.sqrt(x)
    if x == 0:
        return 0.0
    r = abs(x) ** (1.0 / n)
    r -= (r**n - abs(x)) / (n * r ** (n - 1))  # one Newton polish step
    return math.copysign(r, x)


def nth_root(s, n: int) -> SetValue:
    if int(n) != n or n < 2:
        raise ValueError("root index must be an integer >= 2")
    n = int(n)
    s = as_setvalue(s)
    if n % 2 == 0 and s.inf < 0:
        raise NegativeUnderEvenRoot(f"even root of a set reaching {s.inf}")
    if _discrete(s):
        return finite(*(real_root(x, n) for x in _elements(s)))
    return _hull_result(real_root(s.inf, n), real_root(s.sup, n), s)


def sqrt(s) -> SetValue:
    return nth_root(s, 2)


def sum_sets(values: Iterable) -> SetValue:
    return reduce(add, values, Crisp(0.0))


def prod_sets(values: Iterable) -> SetValue:
    return reduce(mul, values, Crisp(1.0))


def clip(s, lo: float, hi: float):
    """Intersect the hull of ``s`` with ``[lo, hi]``; ``None`` when disjoint.

    Endpoints kept from ``s`` keep their display flag, clipped ones are closed.
    """
    s = as_setvalue(s)
    if s.sup < lo or s.inf > hi:
        return None
    lo_flag = isinstance(s, Interval) and s.lo_open and s.inf >= lo
    hi_flag = isinstance(s, Interval) and s.hi_open and s.sup <= hi
    new_lo, new_hi = max(s.inf, lo), min(s.sup, hi)
    if new_lo == new_hi:
        return Crisp(new_lo)
    return Interval(new_lo, new_hi, lo_flag, hi_flag)


def close_enough(s1, s2, rel=1e-9, abs_tol=1e-12) -> bool:
    """Endpoint-wise approximate equality of the hulls."""
    a, b = as_setvalue(s1), as_setvalue(s2)
    return math.isclose(a.inf, b.inf, rel_tol=rel, abs_tol=abs_tol) and math.isclose(
        a.sup, b.sup, rel_tol=rel, abs_tol=abs_tol
    )


# --------------------------------------------------------------------------
# text form


def format_number(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0"
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_setvalue(s, fmt=format_number) -> str:
    s = as_setvalue(s)
    if isinstance(s, Crisp):
        return fmt(s.value)
    if isinstance(s, Interval):
        left = "(" if s.lo_open else "["
        right = ")" if s.hi_open else "]"
        return f"{left}{fmt(s.lo)},{fmt(s.hi)}{right}"
    if isinstance(s, Finite):
        return "{" + ",".join(fmt(e) for e in s.elements) + "}"
    parts = []
    for p in s.parts:
        if isinstance(p, Crisp):
            parts.append("{" + fmt(p.value) + "}")
        else:
            parts.append(format_setvalue(p, fmt))
    return "U".join(parts)


_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.(?!\.)\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_UNION_SYMBOLS = ("U", "∪")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message):
        raise ParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, chars: str) -> str:
        c = self.peek()
        if not c or c not in chars:
            self.fail(f"expected one of {chars!r}")
        self.pos += 1
        return c

    def number(self) -> float:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.fail("expected a number")
        self.pos = m.end()
        return float(m.group())

    def bracket(self) -> Interval:
        start = self.pos
        left = self.expect("[(")
        lo = self.number()
        self.expect(",")
        hi = self.number()
        right = self.expect("])")
        if lo > hi:
            self.pos = start
            self.fail(f"interval lower bound {lo} exceeds upper bound {hi}")
        return Interval(lo, hi, left == "(", right == ")")

    def brace(self) -> SetValue:
        self.expect("{")
        first = self.number()
        if self.text.startswith("..", self.pos):
            self.pos += 2
            last = self.number()
            self.expect("}")
            if not (first.is_integer() and last.is_integer()) or first > last:
                self.fail("a range {a..b} needs integers a <= b")
            return finite(*range(int(first), int(last) + 1))
        elems = [first]
        while self.peek() == ",":
            self.pos += 1
            elems.append(self.number())
        self.expect("}")
        return finite(*elems)

    def term(self) -> SetValue:
        c = self.peek()
        if c in "[(":
            return self.bracket()
        if c == "{":
            return self.brace()
        d = self.number()
        self.skip()
        for sign in ("+i", "-i"):
            if self.text.startswith(sign, self.pos):
                self.pos += 2
                part = self.bracket() if self.peek() in "[(" else self.brace()
                if sign == "+i":
                    return add(Crisp(d), part) if not isinstance(part, Interval) else Interval(
                        d + part.lo, d + part.hi, part.lo_open, part.hi_open
                    )
                if isinstance(part, Interval):
                    return Interval(d - part.hi, d - part.lo, part.hi_open, part.lo_open)
                return sub(Crisp(d), part)
        return Crisp(d)

    def parse(self) -> SetValue:
        terms = [self.term()]
        while self.peek() in _UNION_SYMBOLS and self.peek():
            self.pos += 1
            terms.append(self.term())
        if self.peek():
            self.fail("unexpected trailing input")
        return terms[0] if len(terms) == 1 else union(*terms)


def parse_setvalue(text: str) -> SetValue:
    """Parse ``7``, ``[2,5]``, ``(8.0,8.8]``, ``{4,6}``, ``{200..220}``,
    ``{21}U(22,25]`` or the determinate-plus-indeterminate form ``5+i[0,0.4]``."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty input", str(text), 0)
    return _Parser(text).parse()


def split_tokens(text: str) -> list[str]:
    """Split on whitespace that is not inside brackets or braces."""
    tokens, depth, cur = [], 0, []
    for ch in text:
        if ch in "[({":
            depth += 1
        elif ch in "])}":
            depth -= 1
        if ch.isspace() and depth == 0:
            if cur:
                tokens.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        tokens.append("".join(cur))
    return tokens


def parse_many(text: str) -> list[SetValue]:
    """Whitespace separated observations (whitespace inside brackets is allowed)."""
    return [parse_setvalue(t) for t in split_tokens(text)]


__all__ = [
    "SetValue", "Crisp", "Interval", "Finite", "Union", "Ordering",
    "as_setvalue", "finite", "interval", "union",
    "infimum", "supremum", "midpoint", "hull", "contains", "sort_key", "order_cmp",
    "sorted_sets", "add", "sub", "mul", "div", "power", "nth_root", "sqrt", "real_root",
    "sum_sets", "prod_sets", "clip", "close_enough",
    "format_number", "format_setvalue", "parse_setvalue", "parse_many", "split_tokens",
]
