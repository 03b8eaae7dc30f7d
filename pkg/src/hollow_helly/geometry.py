"""Exact rational boxes, hollow boxes and the elementary predicates on them.

Scalars are :class:`fractions.Fraction` throughout; floats are rejected at
every entry point. Axes are numbered from 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionMismatch, InputError, PreconditionError

Scalar = Fraction
Point = tuple  # tuple[Fraction, ...]
ScalarLike = Union[int, Fraction, str]


def scalar(x: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are refused: a binary float silently carries rounding error into
    predicates whose answers hinge on exact boundary coincidences.
    """
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed rational {x!r}") from exc
    raise InputError(f"not an exact rational: {x!r}")


def point(*coords: ScalarLike) -> Point:
    """Build a point from scalars, e.g. ``point(0, "1/2")``."""
    if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
        coords = tuple(coords[0])
    return tuple(scalar(c) for c in coords)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", scalar(self.lo))
        object.__setattr__(self, "hi", scalar(self.hi))
        if self.lo > self.hi:
            raise InputError(f"interval with lo > hi: [{self.lo}, {self.hi}]")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class Box:
    """A closed axis-aligned box; any subset of its sides may be degenerate."""

    sides: tuple

    def __post_init__(self):
        sides = tuple(s if isinstance(s, Interval) else Interval(*s) for s in self.sides)
        if not sides:
            raise InputError("a box needs at least one axis")
        object.__setattr__(self, "sides", sides)

    @classmethod
    def from_bounds(cls, lo: Sequence[ScalarLike], hi: Sequence[ScalarLike]) -> "Box":
        if len(lo) != len(hi):
            raise DimensionMismatch(f"lo has {len(lo)} coordinates, hi has {len(hi)}")
        return cls(tuple(Interval(a, b) for a, b in zip(lo, hi)))

    @classmethod
    def cube(cls, d: int, lo: ScalarLike = 0, hi: ScalarLike = 1) -> "Box":
        return cls(tuple(Interval(lo, hi) for _ in range(d)))

    @property
    def dim(self) -> int:
        return len(self.sides)

    @property
    def lo(self) -> Point:
        return tuple(s.lo for s in self.sides)

    @property
    def hi(self) -> Point:
        return tuple(s.hi for s in self.sides)

    def nondegenerate_axes(self) -> list:
        return [i for i, s in enumerate(self.sides) if not s.degenerate]

    @property
    def is_full(self) -> bool:
        return all(not s.degenerate for s in self.sides)

    def __repr__(self):
        return "x".join(repr(s) for s in self.sides)


@dataclass(frozen=True)
class HollowBox:
    """The boundary of a box that is nondegenerate on every axis.

    In dimension 1 this is the two-point set ``{lo, hi}``.
    """

    shell: Box

    def __post_init__(self):
        if not isinstance(self.shell, Box):
            raise InputError("HollowBox needs a Box shell")
        for i, s in enumerate(self.shell.sides):
            if s.degenerate:
                raise InputError(f"hollow box degenerate on axis {i}: {s!r}")

    @classmethod
    def from_bounds(cls, lo: Sequence[ScalarLike], hi: Sequence[ScalarLike]) -> "HollowBox":
        return cls(Box.from_bounds(lo, hi))

    @property
    def dim(self) -> int:
        return self.shell.dim

    def __repr__(self):
        return f"bd({self.shell!r})"


def _check_dim(dim: int, p: Sequence) -> None:
    if len(p) != dim:
        raise DimensionMismatch(f"expected {dim} coordinates, got {len(p)}")


def box_contains(b: Box, p: Sequence) -> bool:
    _check_dim(b.dim, p)
    return all(s.lo <= x <= s.hi for s, x in zip(b.sides, p))


def interior_contains(b: Box, p: Sequence) -> bool:
    _check_dim(b.dim, p)
    return all(s.lo < x < s.hi for s, x in zip(b.sides, p))


def hollow_contains(h: HollowBox, p: Sequence) -> bool:
    """Membership in the boundary: inside the shell and on some side's endpoint."""
    sides = h.shell.sides
    _check_dim(len(sides), p)
    on_face = False
    for s, x in zip(sides, p):
        if x < s.lo or x > s.hi:
            return False
        if x == s.lo or x == s.hi:
            on_face = True
    return on_face


def hull(h: HollowBox) -> Box:
    return h.shell


def vertex(b: Box, eps: str) -> Point:
    """The vertex ``x_eps``: coordinate i is ``lo_i`` when ``eps[i] == "0"``, else ``hi_i``."""
    if len(eps) != b.dim:
        raise DimensionMismatch(f"vertex index {eps!r} has length {len(eps)}, box has dim {b.dim}")
    out = []
    for s, e in zip(b.sides, eps):
        if e == "0":
            out.append(s.lo)
        elif e == "1":
            out.append(s.hi)
        else:
            raise InputError(f"vertex index must be over 0/1, got {eps!r}")
    return tuple(out)


def vertex_indices(d: int) -> list:
    """All of ``{0,1}^d`` as strings, lexicographic."""
    return ["".join(bits) for bits in itertools.product("01", repeat=d)]


def facet(b: Box, axis: int, side: int) -> Box:
    """The facet of ``b`` where coordinate ``axis`` is pinned to its ``side`` endpoint."""
    if not 0 <= axis < b.dim:
        raise DimensionMismatch(f"axis {axis} out of range for dim {b.dim}")
    if side not in (0, 1):
        raise InputError(f"side must be 0 or 1, got {side!r}")
    s = b.sides[axis]
    if s.degenerate:
        raise PreconditionError(f"box is degenerate on axis {axis}; facets are not defined")
    v = s.hi if side else s.lo
    sides = list(b.sides)
    sides[axis] = Interval(v, v)
    return Box(tuple(sides))


def box_meet(boxes: Iterable[Box]) -> Optional[Box]:
    """Common intersection of boxes, or ``None`` when it is empty."""
    boxes = list(boxes)
    if not boxes:
        raise InputError("box_meet of an empty list")
    d = boxes[0].dim
    for b in boxes:
        if b.dim != d:
            raise DimensionMismatch(f"box_meet over dims {d} and {b.dim}")
    sides = []
    for i in range(d):
        lo = max(b.sides[i].lo for b in boxes)
        hi = min(b.sides[i].hi for b in boxes)
        if lo > hi:
            return None
        sides.append(Interval(lo, hi))
    return Box(tuple(sides))


def box_subset(inner: Box, outer: Box) -> bool:
    if inner.dim != outer.dim:
        raise DimensionMismatch(f"dims {inner.dim} and {outer.dim}")
    return all(o.lo <= i.lo and i.hi <= o.hi for i, o in zip(inner.sides, outer.sides))


# ---------------------------------------------------------------------------
# Target sets for containment queries


@dataclass(frozen=True)
class PointSet:
    points: frozenset

    def __init__(self, points: Iterable[Sequence]):
        object.__setattr__(self, "points", frozenset(point(p) for p in points))

    def contains(self, p: Sequence) -> bool:
        return tuple(p) in self.points

    def anchors(self) -> list:
        return sorted(self.points)

    @property
    def axis_aligned(self) -> bool:
        return True


@dataclass(frozen=True)
class Segment:
    """The closed segment ``conv{p, q}``."""

    p: Point
    q: Point

    def __post_init__(self):
        object.__setattr__(self, "p", point(self.p))
        object.__setattr__(self, "q", point(self.q))
        if len(self.p) != len(self.q):
            raise DimensionMismatch("segment endpoints differ in dimension")

    @property
    def axis_aligned(self) -> bool:
        return sum(a != b for a, b in zip(self.p, self.q)) <= 1

    def anchors(self) -> list:
        return sorted({self.p, self.q})

    def contains(self, x: Sequence) -> bool:
        _check_dim(len(self.p), x)
        p, q = self.p, self.q
        # x = p + t(q - p) for one t in [0, 1]
        t = None
        for a, b, c in zip(p, q, x):
            if a == b:
                if c != a:
                    return False
                continue
            tt = (c - a) / (b - a)
            if t is None:
                t = tt
            elif tt != t:
                return False
        return t is None or 0 <= t <= 1


def segment(p: Sequence, q: Sequence) -> Segment:
    return Segment(tuple(p), tuple(q))
