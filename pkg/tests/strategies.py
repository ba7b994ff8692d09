"""Hypothesis strategies shared by the property tests."""
from hypothesis import strategies as st

from neutrostat import setval as sv

# small dyadic-friendly floats keep round-trips exact enough to compare
nums = st.integers(-40, 40).map(lambda k: k / 4)
pos_nums = st.integers(1, 40).map(lambda k: k / 4)


@st.composite
def intervals(draw, elements=nums):
    a, b = sorted((draw(elements), draw(elements)))
    if a == b:
        b = a + 0.5
    return sv.Interval(a, b, draw(st.booleans()), draw(st.booleans()))


crisps = nums.map(sv.Crisp)
finites = st.lists(nums, min_size=2, max_size=4, unique=True).map(lambda xs: sv.Finite(tuple(xs)))
unions = st.lists(st.one_of(intervals(), crisps), min_size=2, max_size=3).map(lambda ps: sv.union(*ps))
setvalues = st.one_of(crisps, intervals(), finites, unions)

pos_intervals = intervals(pos_nums)
pos_setvalues = st.one_of(
    pos_nums.map(sv.Crisp),
    pos_intervals,
    st.lists(pos_nums, min_size=2, max_size=4, unique=True).map(lambda xs: sv.Finite(tuple(xs))),
)


def samples(s, k=7):
    """Points of ``s``: discrete elements, or a grid over each closed piece."""
    out = []
    for lo, hi in s.pieces():
        if lo == hi:
            out.append(lo)
        else:
            out.extend(lo + (hi - lo) * j / (k - 1) for j in range(k))
    return out
