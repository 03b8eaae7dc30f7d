"""Exact emptiness tests for finite families of solid and hollow boxes.

Two independent deciders are provided:

* :func:`oracle_intersect` enumerates the candidate grid (every member
  endpoint plus the midpoint of each consecutive pair, per axis) and returns
  the lexicographically least candidate lying in every member.  Each member
  is a union of cells of the product arrangement, so the intersection is
  nonempty iff it contains a candidate.
* :func:`dfs_intersect` commits each hollow member to one of its facets in
  turn, keeping the running box meet, and backtracks on emptiness.

Internally all coordinates are multiplied by ``2 * lcm(denominators)`` so
that endpoints and midpoints become Python ints; witnesses are mapped back to
Fractions on the way out.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, InputError, PreconditionError, ResourceCapExceeded
from .geometry import (
    Box,
    HollowBox,
    Point,
    PointSet,
    Segment,
    box_contains,
    hollow_contains,
)

DEFAULT_CANDIDATE_CAP = 10**8
_CHUNK = 1 << 16


def candidate_cap() -> int:
    """Grid-size cap, overridable through the ``HH_CAND_CAP`` environment variable."""
    raw = os.environ.get("HH_CAND_CAP")
    if raw is None:
        return DEFAULT_CANDIDATE_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"HH_CAND_CAP must be an integer, got {raw!r}") from exc


class Kind(str, Enum):
    SOLID = "solid"
    HOLLOW = "hollow"


@dataclass(frozen=True)
class Member:
    kind: Kind
    body: Union[Box, HollowBox]

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        want = Box if kind is Kind.SOLID else HollowBox
        if not isinstance(self.body, want):
            raise InputError(f"{kind.value} member needs a {want.__name__}, got {type(self.body).__name__}")

    @classmethod
    def solid(cls, box: Box) -> "Member":
        return cls(Kind.SOLID, box)

    @classmethod
    def hollow(cls, h: Union[Box, HollowBox]) -> "Member":
        return cls(Kind.HOLLOW, h if isinstance(h, HollowBox) else HollowBox(h))

    @property
    def hull(self) -> Box:
        return self.body if self.kind is Kind.SOLID else self.body.shell

    @property
    def dim(self) -> int:
        return self.hull.dim

    def contains(self, p: Sequence) -> bool:
        if self.kind is Kind.SOLID:
            return box_contains(self.body, p)
        return hollow_contains(self.body, p)

    def __repr__(self):
        return repr(self.body) if self.kind is Kind.HOLLOW else f"solid({self.body!r})"


@dataclass(frozen=True)
class Family:
    """An ordered, nonempty list of members sharing one dimension."""

    members: tuple

    def __post_init__(self):
        members = tuple(_as_member(m) for m in self.members)
        if not members:
            raise InputError("a family needs at least one member")
        d = members[0].dim
        for i, m in enumerate(members):
            if m.dim != d:
                raise DimensionMismatch(f"member {i} has dim {m.dim}, expected {d}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members) -> "Family":
        if len(members) == 1 and isinstance(members[0], (list, tuple)):
            members = tuple(members[0])
        return cls(tuple(members))

    @property
    def dim(self) -> int:
        return self.members[0].dim

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def subfamily(self, indices: Iterable[int]) -> "Family":
        return Family(tuple(self.members[i] for i in indices))

    def with_member(self, m) -> "Family":
        return Family(self.members + (_as_member(m),))

    @property
    def all_hollow(self) -> bool:
        return all(m.kind is Kind.HOLLOW for m in self.members)

    @property
    def all_solid(self) -> bool:
        return all(m.kind is Kind.SOLID for m in self.members)


def _as_member(m) -> Member:
    if isinstance(m, Member):
        return m
    if isinstance(m, HollowBox):
        return Member.hollow(m)
    if isinstance(m, Box):
        return Member.solid(m)
    raise InputError(f"cannot make a family member from {type(m).__name__}")


@dataclass(frozen=True)
class IntersectionResult:
    witness: Optional[Point] = None

    @property
    def is_empty(self) -> bool:
        return self.witness is None

    def __repr__(self):
        return "Empty" if self.witness is None else f"Witness({', '.join(map(str, self.witness))})"


EMPTY = IntersectionResult(None)


@dataclass(frozen=True)
class GridFrame:
    endpoints: tuple  # per axis, sorted distinct Fractions
    candidates: tuple  # per axis, endpoints interleaved with midpoints

    @property
    def size(self) -> int:
        return math.prod(len(c) for c in self.candidates)


def _interleave(values: list) -> tuple:
    out = []
    for a, b in zip(values, values[1:]):
        out.append(a)
        out.append((a + b) / 2)
    out.append(values[-1])
    return tuple(out)


def build_grid(f: Family) -> GridFrame:
    endpoints = []
    for i in range(f.dim):
        vals = set()
        for m in f.members:
            s = m.hull.sides[i]
            vals.add(s.lo)
            vals.add(s.hi)
        endpoints.append(tuple(sorted(vals)))
    return GridFrame(tuple(endpoints), tuple(_interleave(list(e)) for e in endpoints))


# ---------------------------------------------------------------------------
# scaled-integer view of a family


class CompiledFamily:
    """Integer-scaled copy of a family shared by the deciders.

    Every coordinate ``v`` is stored as ``v * scale`` where ``scale`` is twice
    the lcm of all denominators, so grid midpoints are integers too.
    """

    def __init__(self, f: Family):
        self.family = f
        self.dim = f.dim
        den = 1
        for m in f.members:
            for s in m.hull.sides:
                den = math.lcm(den, s.lo.denominator, s.hi.denominator)
        self.scale = 2 * den
        sc = self.scale
        self.lo = []
        self.hi = []
        self.hollow = []
        for m in f.members:
            h = m.hull
            self.lo.append(tuple(int(s.lo * sc) for s in h.sides))
            self.hi.append(tuple(int(s.hi * sc) for s in h.sides))
            self.hollow.append(m.kind is Kind.HOLLOW)
        self.n = len(f.members)

    def unscale(self, coords: Sequence[int]) -> Point:
        return tuple(Fraction(c, self.scale) for c in coords)

    def rescale(self, p: Sequence) -> tuple:
        """Map an exact point into scaled coordinates, or ``None`` if it is off the scaled lattice."""
        out = []
        for x in p:
            v = Fraction(x) * self.scale
            if v.denominator != 1:
                return None
            out.append(v.numerator)
        return tuple(out)

    def meet(self, indices: Sequence[int]):
        d = self.dim
        lo = [max(self.lo[k][i] for k in indices) for i in range(d)]
        hi = [min(self.hi[k][i] for k in indices) for i in range(d)]
        return lo, hi

    def member_contains(self, k: int, p: Sequence[int]) -> bool:
        lo, hi = self.lo[k], self.hi[k]
        on_face = False
        for a, b, x in zip(lo, hi, p):
            if x < a or x > b:
                return False
            if x == a or x == b:
                on_face = True
        return on_face or not self.hollow[k]

    def mask_of(self, p: Sequence[int]) -> int:
        """Bitmask of all members containing the scaled point ``p``."""
        mask = 0
        for k in range(self.n):
            if self.member_contains(k, p):
                mask |= 1 << k
        return mask

    # -- backtracking decider --------------------------------------------

    def dfs(self, indices: Optional[Sequence[int]] = None) -> Optional[tuple]:
        """Scaled witness for the members in ``indices`` (default: all), or None."""
        if indices is None:
            indices = range(self.n)
        indices = list(indices)
        d = self.dim
        lo, hi = self.meet(indices)
        for i in range(d):
            if lo[i] > hi[i]:
                return None
        # degenerate axes of the meet are pinned from the start
        pins = [lo[i] if lo[i] == hi[i] else None for i in range(d)]
        hollow = [(self.lo[k], self.hi[k]) for k in indices if self.hollow[k]]

        def options(level):
            mlo, mhi = hollow[level]
            for i in range(d):
                v = pins[i]
                if v is not None and (v == mlo[i] or v == mhi[i]):
                    # the running box already lies on a facet of this member
                    yield None
                    return
            for i in range(d):
                if pins[i] is not None:
                    continue
                for v in (mlo[i], mhi[i]):
                    if lo[i] <= v <= hi[i]:
                        yield (i, v)

        depth = len(hollow)
        stack = []
        level = 0
        it = options(0) if depth else None
        while True:
            if level == depth:
                return tuple(lo[i] if pins[i] is None else pins[i] for i in range(d))
            choice = next(it, False)
            if choice is False:
                if not stack:
                    return None
                level -= 1
                it, undo = stack.pop()
                if undo is not None:
                    pins[undo] = None
                continue
            undo = None
            if choice is not None:
                pins[choice[0]] = choice[1]
                undo = choice[0]
            stack.append((it, undo))
            level += 1
            if level < depth:
                it = options(level)

    # -- grid enumeration --------------------------------------------------

    def axis_candidates(self, lo: Sequence[int], hi: Sequence[int]) -> list:
        """Per-axis scaled candidates restricted to ``[lo_i, hi_i]``."""
        out = []
        for i in range(self.dim):
            vals = sorted({self.lo[k][i] for k in range(self.n)} | {self.hi[k][i] for k in range(self.n)})
            cands = []
            for a, b in zip(vals, vals[1:]):
                cands.append(a)
                cands.append((a + b) // 2)
            cands.append(vals[-1])
            out.append([c for c in cands if lo[i] <= c <= hi[i]])
        return out

    def _dtype(self):
        big = 0
        for k in range(self.n):
            big = max(big, max(map(abs, self.lo[k])), max(map(abs, self.hi[k])))
        return np.int64 if big < 2**62 else object

    def membership(self, pts: np.ndarray, indices: Sequence[int]) -> np.ndarray:
        """Boolean matrix ``(len(pts), len(indices))``: does member k contain point r."""
        out = np.empty((pts.shape[0], len(indices)), dtype=bool)
        dtype = pts.dtype
        for col, k in enumerate(indices):
            lo = np.array(self.lo[k], dtype=dtype)
            hi = np.array(self.hi[k], dtype=dtype)
            inside = np.all((pts >= lo) & (pts <= hi), axis=1)
            if self.hollow[k]:
                inside &= np.any((pts == lo) | (pts == hi), axis=1)
            out[:, col] = inside
        return out

    def oracle(self, indices: Optional[Sequence[int]] = None, cap: Optional[int] = None) -> Optional[tuple]:
        if indices is None:
            indices = range(self.n)
        indices = list(indices)
        lo, hi = self.meet(indices)
        if any(a > b for a, b in zip(lo, hi)):
            return None
        axes = self.axis_candidates(lo, hi)
        shape = tuple(len(a) for a in axes)
        total = math.prod(shape)
        cap = candidate_cap() if cap is None else cap
        if total > cap:
            raise ResourceCapExceeded(
                f"candidate grid has {total} points (cap {cap}); use dfs_intersect instead"
            )
        dtype = self._dtype()
        axis_arrays = [np.array(a, dtype=dtype) for a in axes]
        for start in range(0, total, _CHUNK):
            flat = np.arange(start, min(total, start + _CHUNK))
            idx = np.unravel_index(flat, shape)
            pts = np.stack([axis_arrays[i][idx[i]] for i in range(self.dim)], axis=1)
            ok = self.membership(pts, indices).all(axis=1)
            hits = np.flatnonzero(ok)
            if hits.size:
                return tuple(int(c) for c in pts[hits[0]])
        return None


# ---------------------------------------------------------------------------
# public deciders


def oracle_intersect(f: Family, cap: Optional[int] = None) -> IntersectionResult:
    """Grid oracle: lexicographically least candidate point in every member.

    Raises :class:`ResourceCapExceeded` when the candidate grid (restricted to
    the meet of the hulls) has more than ``cap`` points.
    """
    c = CompiledFamily(f)
    w = c.oracle(cap=cap)
    return EMPTY if w is None else IntersectionResult(c.unscale(w))


def dfs_intersect(f: Family) -> IntersectionResult:
    """Facet-choice backtracking; the witness is the lex-least corner of the leaf box."""
    c = CompiledFamily(f)
    w = c.dfs()
    return EMPTY if w is None else IntersectionResult(c.unscale(w))


class Arrangement:
    """Candidate points of a family's grid inside ``within``, with membership table.

    ``within`` defaults to the meet of all hulls. Its bounds must be grid
    endpoints, so that the cells it contains are whole cells of the grid.
    Queries over subfamilies are answered relative to ``within``.
    """

    def __init__(self, f: Family, within: Optional[Box] = None, cap: Optional[int] = None):
        self.family = f
        self.compiled = c = CompiledFamily(f)
        if within is None:
            lo, hi = c.meet(range(c.n))
        else:
            if within.dim != f.dim:
                raise DimensionMismatch("restriction box has the wrong dimension")
            lo, hi = c.rescale(within.lo), c.rescale(within.hi)
            frame = build_grid(f)
            for i, s in enumerate(within.sides):
                if s.lo not in frame.endpoints[i] or s.hi not in frame.endpoints[i]:
                    raise PreconditionError(f"restriction box bound on axis {i} is not a grid endpoint")
        if lo is None or hi is None or any(a > b for a, b in zip(lo, hi)):
            self.points = np.empty((0, f.dim), dtype=np.int64)
        else:
            axes = c.axis_candidates(lo, hi)
            total = math.prod(len(a) for a in axes)
            cap = candidate_cap() if cap is None else cap
            if total > cap:
                raise ResourceCapExceeded(f"candidate grid has {total} points (cap {cap})")
            dtype = c._dtype()
            grids = np.meshgrid(*[np.array(a, dtype=dtype) for a in axes], indexing="ij")
            self.points = np.stack([g.ravel() for g in grids], axis=1) if total else np.empty((0, f.dim), dtype=dtype)
        self.table = c.membership(self.points, range(c.n))

    def _rows(self, subset: Optional[Sequence[int]]) -> np.ndarray:
        cols = self.table if subset is None else self.table[:, list(subset)]
        return np.flatnonzero(cols.all(axis=1))

    def reps(self, subset: Optional[Sequence[int]] = None) -> list:
        """Lex-sorted candidate points in every member of ``subset`` (default: all)."""
        rows = self._rows(subset)
        return [self.compiled.unscale(int(v) for v in self.points[r]) for r in rows]

    def check_target(self, t) -> None:
        if not t.axis_aligned:
            raise PreconditionError("target segment is not axis-parallel; it is not a union of grid cells")
        frame = build_grid(self.family)
        for a in t.anchors():
            if len(a) != self.family.dim:
                raise DimensionMismatch("target has the wrong dimension")
            for i, x in enumerate(a):
                if x not in frame.endpoints[i]:
                    raise PreconditionError(f"target anchor {a} is off the grid on axis {i}")

    def subset_check(self, t, subset: Optional[Sequence[int]] = None) -> bool:
        rows = self._rows(subset)
        if rows.size == 0:
            return True
        self.check_target(t)
        c = self.compiled
        for r in rows:
            if not t.contains(c.unscale(int(v) for v in self.points[r])):
                return False
        return True


def intersection_reps(f: Family) -> list:
    return Arrangement(f).reps()


def subset_check(f: Family, t: Union[PointSet, Segment]) -> bool:
    """Is the whole intersection of ``f`` contained in the target set ``t``?

    ``t`` must be a finite point set or an axis-parallel segment whose anchor
    coordinates are member endpoints; otherwise :class:`PreconditionError`.
    An empty intersection is contained in anything.
    """
    return Arrangement(f).subset_check(t)
