import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hollow_helly.geometry import Box, HollowBox, Interval
from hollow_helly.intersection import Family, Member


def H(lo, hi):
    return Member.hollow(HollowBox.from_bounds(lo, hi))


def S(lo, hi):
    return Member.solid(Box.from_bounds(lo, hi))


def lattice_points(f, step=Fraction(1, 2)):
    """Every point of the ``step`` lattice inside the bounding box of ``f``.

    For integer endpoints and step 1/2 this hits every cell of every
    arrangement, independently of the library's grid construction.
    """
    axes = []
    for i in range(f.dim):
        lo = min(m.hull.sides[i].lo for m in f.members)
        hi = max(m.hull.sides[i].hi for m in f.members)
        n = int((hi - lo) / step)
        axes.append([lo + k * step for k in range(n + 1)])
    return itertools.product(*axes)


def brute_points(f, step=Fraction(1, 2)):
    return [p for p in lattice_points(f, step) if all(m.contains(p) for m in f.members)]


def brute_empty(f, step=Fraction(1, 2)):
    return not any(all(m.contains(p) for m in f.members) for p in lattice_points(f, step))


def brute_defect(f, empty=brute_empty):
    """Smallest empty subfamily size by exhaustive subset enumeration."""
    n = len(f)
    for m in range(1, n + 1):
        for combo in itertools.combinations(range(n), m):
            if empty(f.subfamily(combo)):
                return m
    return float("inf")


@st.composite
def hollow_boxes(draw, d, G=6):
    sides = []
    for _ in range(d):
        a = draw(st.integers(0, G - 1))
        b = draw(st.integers(a + 1, G))
        sides.append(Interval(a, b))
    return HollowBox(Box(tuple(sides)))


@st.composite
def solid_boxes(draw, d, G=6):
    sides = []
    for _ in range(d):
        a = draw(st.integers(0, G))
        b = draw(st.integers(a, G))
        sides.append(Interval(a, b))
    return Box(tuple(sides))


@st.composite
def families(draw, d=None, max_size=5, G=5, solids=True):
    d = draw(st.integers(1, 3)) if d is None else d
    n = draw(st.integers(1, max_size))
    members = []
    for _ in range(n):
        if solids and draw(st.booleans()) and draw(st.booleans()):
            members.append(Member.solid(draw(solid_boxes(d, G))))
        else:
            members.append(Member.hollow(draw(hollow_boxes(d, G))))
    return Family(tuple(members))


@pytest.fixture
def figure1():
    return Family.of(
        H([0, 0], [4, 4]),
        H([0, -1], [2, 5]),
        H([2, -1], [4, 5]),
        H([-1, 0], [5, 2]),
        H([-1, 2], [5, 4]),
    )


@pytest.fixture
def figure2():
    return Family.of(H([-1, -1], [1, 1]), H([-1, 0], [1, 2]), H([0, -1], [2, 1]), H([0, 0], [2, 2]))
