"""Random sequences that mix numbers with indeterminate symbols.

All draws use numpy's ``default_rng`` (PCG64 seeded through SeedSequence),
so a given seed reproduces the same sequence on every platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import BadRange, BadWeights, EmptyAlphabet
from .setval import Crisp, Interval, SetValue, format_number


@dataclass(frozen=True)
class Value:
    v: float

    def __str__(self):
        return format_number(self.v)


@dataclass(frozen=True)
class Indet:
    tag: int = 0

    def __post_init__(self):
        if self.tag < 0:
            raise ValueError("indeterminacy tags are nonnegative")

    def __str__(self):
        return "I" if self.tag == 0 else f"I{self.tag}"


NeutroSymbol = Union[Value, Indet]


def _indets(count: int) -> list[Indet]:
    # a single indeterminacy is untagged; several get tags 1..count
    if count == 1:
        return [Indet(0)]
    return [Indet(t) for t in range(1, count + 1)]


def uniform_sequence(values: Sequence[float], indet_count: int = 1, length: int = 10, seed=None) -> list:
    """Each value and each indeterminacy is equally likely."""
    if indet_count < 0:
        raise EmptyAlphabet("indeterminacy count cannot be negative")
    alphabet = [Value(float(v)) for v in values] + _indets(indet_count)
    if not alphabet:
        raise EmptyAlphabet("nothing to draw from")
    rng = np.random.default_rng(seed)
    return [alphabet[i] for i in rng.integers(0, len(alphabet), size=length)]


@dataclass(frozen=True)
class WeightedAlphabet:
    values: tuple  # (x_j, p_j)
    indets: tuple = ()  # (tag, r_j)

    def __post_init__(self):
        values = tuple((float(x), float(p)) for x, p in self.values)
        indets = tuple((int(t), float(r)) for t, r in self.indets)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "indets", indets)
        weights = [p for _, p in values] + [r for _, r in indets]
        if not weights:
            raise EmptyAlphabet("nothing to draw from")
        if any(w <= 0 for w in weights):
            raise BadWeights("weights must be positive")
        if abs(math.fsum(weights) - 1.0) > 1e-9:
            raise BadWeights(f"weights sum to {math.fsum(weights)}, not 1")

    @property
    def symbols(self) -> list:
        return [Value(x) for x, _ in self.values] + [Indet(t) for t, _ in self.indets]

    @property
    def weights(self) -> list[float]:
        return [p for _, p in self.values] + [r for _, r in self.indets]


def weighted_sequence(alpha: WeightedAlphabet, length: int = 10, seed=None) -> list:
    rng = np.random.default_rng(seed)
    w = np.asarray(alpha.weights)
    symbols = alpha.symbols
    return [symbols[i] for i in rng.choice(len(symbols), size=length, p=w / w.sum())]


def interval_ball_draw(lo: int, hi: int, count: int = 1, seed=None) -> list[SetValue]:
    """Draw balls labelled [a, b] with lo <= a <= b <= hi, all labels equally likely.

    Labels with a <= b over m integers correspond one to one with pairs
    u < v from m + 1 slots (a = lo + u, b = lo + v - 1), so distinct pairs
    are drawn uniformly by rejection.
    """
    if int(lo) != lo or int(hi) != hi or lo > hi:
        raise BadRange(f"need integers lo <= hi, got {lo}, {hi}")
    lo, hi = int(lo), int(hi)
    slots = hi - lo + 2
    rng = np.random.default_rng(seed)
    pairs: list[tuple[int, int]] = []
    while len(pairs) < count:
        need = count - len(pairs)
        u = rng.integers(0, slots, size=need)
        v = rng.integers(0, slots, size=need)
        keep = u != v
        pairs.extend(zip(np.minimum(u, v)[keep].tolist(), np.maximum(u, v)[keep].tolist()))
    out: list[SetValue] = []
    for u, v in pairs[:count]:
        a, b = lo + u, lo + v - 1
        out.append(Crisp(a) if a == b else Interval(a, b))
    return out


def format_sequence(symbols, sep: str = ", ") -> str:
    return sep.join(str(s) for s in symbols)


__all__ = [
    "Value", "Indet", "NeutroSymbol", "WeightedAlphabet",
    "uniform_sequence", "weighted_sequence", "interval_ball_draw", "format_sequence",
]
