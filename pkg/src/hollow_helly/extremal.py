"""Generators and recognizers for the two extremal family shapes.

*Facet form* (Helly defect ``2d + 1``): a hollow box ``bd B`` together with
hollow boxes that all pass through one interior point ``p`` of ``B``, each
containing exactly one facet of ``B``, jointly containing all ``2d`` facets.

*Vertex form* (Helly defect ``2**d``): hollow boxes whose hulls all contain
``B``, each missing at most one vertex of ``B``, and every vertex missed by
some member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .geometry import (
    Box,
    HollowBox,
    Interval,
    Point,
    box_meet,
    box_subset,
    facet,
    interior_contains,
    point,
    scalar,
    vertex_indices,
)
from .intersection import Family, Kind, Member, intersection_reps


@dataclass(frozen=True)
class FacetFamilySpec:
    B: Box
    p: Point
    slack: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "p", point(self.p))
        object.__setattr__(self, "slack", scalar(self.slack))
        if self.B.dim < 2:
            raise InputError("the facet construction needs d >= 2")
        if not interior_contains(self.B, self.p):
            raise InputError(f"p = {self.p} is not interior to B")
        if self.slack <= 0:
            raise InputError("slack must be positive")

    @classmethod
    def default(cls, d: int) -> "FacetFamilySpec":
        return cls(Box.cube(d, 0, 4), (2,) * d)


@dataclass(frozen=True)
class VertexFamilySpec:
    B: Box
    margin: Fraction = Fraction(1)
    margins: Optional[tuple] = None  # per-axis override

    def __post_init__(self):
        object.__setattr__(self, "margin", scalar(self.margin))
        if not self.B.is_full:
            raise InputError("B must be nondegenerate on every axis")
        if self.margins is not None:
            ms = tuple(scalar(m) for m in self.margins)
            if len(ms) != self.B.dim:
                raise InputError("one margin per axis")
            object.__setattr__(self, "margins", ms)
        for m in self.axis_margins():
            if m <= 0:
                raise InputError("margins must be positive")

    def axis_margins(self) -> tuple:
        return self.margins if self.margins is not None else (self.margin,) * self.B.dim

    @classmethod
    def default(cls, d: int) -> "VertexFamilySpec":
        return cls(Box.cube(d, 0, 1), 1)


def facet_owner_box(spec: FacetFamilySpec, axis: int, side: int) -> HollowBox:
    """The member owning facet ``(axis, side)`` in the generated facet family."""
    sides = []
    for k, s in enumerate(spec.B.sides):
        if k == axis:
            sides.append(Interval(s.lo, spec.p[k]) if side == 0 else Interval(spec.p[k], s.hi))
        else:
            sides.append(Interval(s.lo - spec.slack, s.hi + spec.slack))
    return HollowBox(Box(tuple(sides)))


def gen_facet_family(spec: FacetFamilySpec) -> Family:
    """``bd B`` first, then the owners of facets ``(0,0), (0,1), (1,0), ...``."""
    members = [Member.hollow(spec.B)]
    for i in range(spec.B.dim):
        for j in (0, 1):
            members.append(Member.hollow(facet_owner_box(spec, i, j)))
    return Family(tuple(members))


def vertex_member_box(spec: VertexFamilySpec, eps: str) -> HollowBox:
    sides = []
    for s, e, m in zip(spec.B.sides, eps, spec.axis_margins()):
        sides.append(Interval(s.lo - m, s.hi) if e == "0" else Interval(s.lo, s.hi + m))
    return HollowBox(Box(tuple(sides)))


def gen_vertex_family(spec: VertexFamilySpec) -> Family:
    """One member per vertex of ``B``, in lexicographic vertex order; member ``eps`` misses only ``x_eps``."""
    return Family(tuple(Member.hollow(vertex_member_box(spec, e)) for e in vertex_indices(spec.B.dim)))


def pattern_of(D: HollowBox, B: Box) -> Optional[str]:
    """Which vertices of ``B`` does ``D`` miss, as a pattern; ``None`` if it misses none.

    A vertex lies off ``D`` exactly when it is strictly inside ``hull(D)`` on
    every axis, so per axis we record which endpoint choices are strict.
    """
    h = D.shell
    if not box_subset(B, h):
        raise PreconditionError("B is not contained in the hull of D")
    out = []
    for b, s in zip(B.sides, h.sides):
        low_strict = s.lo < b.lo < s.hi
        high_strict = s.lo < b.hi < s.hi
        if low_strict and high_strict:
            out.append("*")
        elif low_strict:
            out.append("0")
        elif high_strict:
            out.append("1")
        else:
            return None
    return "".join(out)


def facet_in_hollow(F: Box, D: HollowBox) -> bool:
    """``F`` (a box) lies in the boundary of ``D``.

    A box inside a boundary complex sits inside a single facet, so it suffices
    that ``F`` is inside the hull and flat on some axis at one of D's endpoints.
    """
    h = D.shell
    if not box_subset(F, h):
        return False
    for f_side, d_side in zip(F.sides, h.sides):
        if f_side.degenerate and (f_side.lo == d_side.lo or f_side.lo == d_side.hi):
            return True
    return False


@dataclass
class RecognitionReport:
    form: str
    accepted: bool
    role_map: dict = field(default_factory=dict)
    chosen_B: Optional[Box] = None
    chosen_p: Optional[Point] = None
    failed_condition: Optional[str] = None
    detail: str = ""

    def to_json(self) -> dict:
        from .io import format_point, serialize_box

        return {
            "form": self.form,
            "accepted": self.accepted,
            "role_map": {str(k): v for k, v in sorted(self.role_map.items())},
            "chosen_B": None if self.chosen_B is None else serialize_box(self.chosen_B),
            "chosen_p": None if self.chosen_p is None else format_point(self.chosen_p),
            "failed_condition": self.failed_condition,
            "detail": self.detail,
        }


def _distinct(f: Family) -> tuple:
    """Indices of first occurrences, and a map from every index to its first occurrence."""
    first = {}
    rep = {}
    for k, m in enumerate(f.members):
        rep[k] = first.setdefault(m, k)
    return sorted(set(first.values())), rep


def _spread_roles(roles: dict, rep: dict) -> dict:
    return {k: roles[rep[k]] for k in rep if rep[k] in roles}


# failure precedence when several boundary candidates fail: later = got further
_FACET_RANK = {"hollow": 0, "d": 0, "3": 1, "4": 2, "2": 3}


def recognize_facet_form(f: Family) -> RecognitionReport:
    """Search for a member playing ``bd B`` and a point ``p`` making ``f`` facet form.

    Conditions are numbered as in the construction: (2) a common interior
    point ``p`` of ``B`` in every other member, (3) each other member holds
    exactly one facet of ``B``, (4) every facet is held.  Whether a member
    holds a facet does not depend on ``p``, so (3) and (4) are checked first;
    ``p`` then ranges over grid representatives of the others' intersection.
    """
    d = f.dim
    if d < 2:
        return RecognitionReport("facet", False, failed_condition="d", detail="facet form needs d >= 2")
    if not f.all_hollow:
        return RecognitionReport("facet", False, failed_condition="hollow", detail="solid member present")
    uniq, rep = _distinct(f)
    best = None
    for b in uniq:
        B = f.members[b].body.shell
        others = [k for k in uniq if k != b]
        facets = {(i, j): facet(B, i, j) for i in range(d) for j in (0, 1)}
        roles = {b: "boundary"}
        fail = None
        covered = set()
        for k in others:
            held = [key for key, F in facets.items() if facet_in_hollow(F, f.members[k].body)]
            if len(held) != 1:
                fail = ("3", f"member {k} holds {len(held)} facets of member {b}'s box")
                break
            covered.add(held[0])
            roles[k] = f"facet {held[0][0]}^{held[0][1]}"
        if fail is None and len(covered) != 2 * d:
            missing = sorted(set(facets) - covered)
            fail = ("4", f"facets {missing} of member {b}'s box are not held")
        p = None
        if fail is None:
            reps = intersection_reps(f.subfamily(others))
            p = next((q for q in reps if interior_contains(B, q)), None)
            if p is None:
                fail = ("2", f"no interior point of member {b}'s box lies in all other members")
        if fail is None:
            return RecognitionReport("facet", True, _spread_roles(roles, rep), B, p)
        if best is None or _FACET_RANK[fail[0]] > _FACET_RANK[best[0][0]]:
            best = (fail, B)
    (cond, detail), B = best
    return RecognitionReport("facet", False, chosen_B=B, failed_condition=cond, detail=detail)


def recognize_vertex_form(f: Family) -> RecognitionReport:
    """Check the vertex-form conditions with ``B`` the meet of all hulls.

    (1') hulls contain ``B`` holds by construction once the meet is a
    nondegenerate box; (3') every member misses at most one vertex; (2')
    every vertex is missed.  Duplicate members are collapsed first.
    """
    if not f.all_hollow:
        return RecognitionReport("vertex", False, failed_condition="hollow", detail="solid member present")
    uniq, rep = _distinct(f)
    B = box_meet(f.members[k].body.shell for k in uniq)
    if B is None:
        return RecognitionReport("vertex", False, failed_condition="1'", detail="hulls have empty meet")
    if not B.is_full:
        return RecognitionReport(
            "vertex", False, chosen_B=B, failed_condition="1'", detail="meet of hulls is degenerate"
        )
    roles = {}
    missed = set()
    for k in uniq:
        rho = pattern_of(f.members[k].body, B)
        if rho is None:
            roles[k] = "contains all vertices"
        elif "*" in rho:
            return RecognitionReport(
                "vertex", False, chosen_B=B, failed_condition="3'", detail=f"member {k} misses vertices {rho}"
            )
        else:
            roles[k] = f"misses {rho}"
            missed.add(rho)
    unmissed = [e for e in vertex_indices(f.dim) if e not in missed]
    if unmissed:
        return RecognitionReport(
            "vertex", False, chosen_B=B, failed_condition="2'", detail=f"vertices {unmissed} are never missed"
        )
    return RecognitionReport("vertex", True, _spread_roles(roles, rep), B)


def recognize_onedim_triple(f: Family) -> bool:
    """Is ``f`` (as a set) exactly ``{{a,b},{b,c},{c,a}}`` for distinct ``a, b, c``?"""
    if f.dim != 1:
        raise InputError("the two-point triple only exists in dimension 1")
    if not f.all_hollow:
        return False
    pairs = {(m.body.shell.sides[0].lo, m.body.shell.sides[0].hi) for m in f.members}
    values = {v for pair in pairs for v in pair}
    return len(pairs) == 3 and len(values) == 3
