"""k-wise intersection properties, Helly defects and theorem-level checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DimensionMismatch, EngineDisagreement, InputError, PreconditionError
from .extremal import RecognitionReport, recognize_facet_form, recognize_onedim_triple, recognize_vertex_form
from .geometry import Box, HollowBox, PointSet, box_subset, hollow_contains, segment, vertex, vertex_indices
from .intersection import Arrangement, CompiledFamily, Family, Kind, Member, dfs_intersect

INF = math.inf


class SubfamilyTester:
    """Nonemptiness of subfamilies, memoized through a cache of witness masks.

    Every witness found by the backtracking search is tested against all
    members; a later subfamily contained in that membership mask is known
    nonempty without another search.  Only inclusion-maximal masks are kept.
    """

    def __init__(self, f: Family):
        self.family = f
        self.compiled = CompiledFamily(f)
        self.masks: list = []
        self.searches = 0

    def nonempty(self, indices: Sequence[int]) -> bool:
        bits = 0
        for k in indices:
            bits |= 1 << k
        for m in self.masks:
            if bits & m == bits:
                return True
        self.searches += 1
        w = self.compiled.dfs(indices)
        if w is None:
            return False
        mask = self.compiled.mask_of(w)
        if mask & bits != bits:
            raise EngineDisagreement(f"dfs witness {w} fails membership for subfamily {list(indices)}")
        self.masks = [m for m in self.masks if m & mask != m]
        self.masks.append(mask)
        return True

    def confirm_empty(self, indices: Sequence[int]) -> None:
        """Second opinion from the grid oracle on a subfamily the search called empty."""
        w = self.compiled.oracle(indices)
        if w is not None:
            raise EngineDisagreement(f"dfs says subfamily {list(indices)} is empty, oracle found {w}")


def pi_k(f: Family, k: int, tester: Optional[SubfamilyTester] = None) -> tuple:
    """Does every subfamily of at most ``k`` members intersect?

    Returns ``(holds, first violating subfamily in lexicographic index order)``.
    Only subfamilies of size ``min(k, len(f))`` are examined; smaller ones
    contain their supersets' intersections.
    """
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    tester = tester or SubfamilyTester(f)
    m = min(k, len(f))
    for combo in itertools.combinations(range(len(f)), m):
        if not tester.nonempty(combo):
            return False, list(combo)
    return True, None


def defect_search(f: Family, tester: Optional[SubfamilyTester] = None) -> tuple:
    """``(defect, smallest empty subfamily)``; ``(inf, None)`` when ``f`` intersects."""
    tester = tester or SubfamilyTester(f)
    n = len(f)
    everything = tuple(range(n))
    if tester.nonempty(everything):
        return INF, None
    for m in range(2, n + 1):
        for combo in itertools.combinations(everything, m):
            if not tester.nonempty(combo):
                tester.confirm_empty(combo)
                return m, list(combo)
    raise EngineDisagreement("whole family empty but no empty subfamily found")  # pragma: no cover


def helly_defect(f: Family):
    """Smallest size of an empty subfamily, or ``math.inf``."""
    return defect_search(f)[0]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    detail: str = ""
    part: Optional[str] = None

    @classmethod
    def passed(cls, detail: str = "") -> "Verdict":
        return cls(True, detail)

    @classmethod
    def fail(cls, detail: str, part: Optional[str] = None) -> "Verdict":
        return cls(False, detail, part)

    def to_json(self) -> dict:
        out = {"verdict": "pass" if self.ok else "fail", "detail": self.detail}
        if self.part is not None:
            out["part"] = self.part
        return out


@dataclass
class HellyReport:
    defect: object
    witness_subfamily: Optional[list]
    pi: dict = field(default_factory=dict)
    verdict: Verdict = Verdict.passed()
    recognizer_outcome: Optional[RecognitionReport] = None

    def to_json(self) -> dict:
        return {
            "defect": "inf" if self.defect == INF else self.defect,
            "witness_subfamily": self.witness_subfamily,
            "pi": {str(k): v for k, v in sorted(self.pi.items())},
            **self.verdict.to_json(),
            "recognizer": None if self.recognizer_outcome is None else self.recognizer_outcome.to_json(),
        }


def _report(f: Family, ks: Sequence[int]) -> HellyReport:
    defect, sub = defect_search(f)
    return HellyReport(defect, sub, {k: k < defect for k in ks})


def verify_solid_helly(f: Family) -> Verdict:
    """Pairwise intersecting solid boxes must have a common point."""
    if not f.all_solid:
        raise InputError("verify_solid_helly takes solid boxes only")
    tester = SubfamilyTester(f)
    holds, pair = pi_k(f, 2, tester)
    if not holds:
        return Verdict.passed(f"members {pair} are disjoint")
    res = dfs_intersect(f)
    if res.is_empty:
        return Verdict.fail("pairwise intersecting solid boxes with empty intersection")
    return Verdict.passed(f"global witness {res.witness}")


def _hollow_family(f: Family, d_ok, what: str) -> None:
    if not d_ok(f.dim):
        raise DimensionMismatch(f"{what} does not apply in dimension {f.dim}")
    if not f.all_hollow:
        raise InputError(f"{what} takes hollow boxes only")


def verify_theorem1(f: Family) -> HellyReport:
    """Hollow rectangles: 5-wise intersection forces intersection; 4-wise does unless facet form."""
    _hollow_family(f, lambda d: d == 2, "the rectangle theorem")
    rep = _report(f, (4, 5))
    return _judge(f, rep, 5, recognize_facet_form)


def verify_theorem2(f: Family) -> HellyReport:
    """Hollow boxes in d >= 3: ``2**d``-wise forces intersection; ``2**d - 1`` does unless vertex form."""
    _hollow_family(f, lambda d: d >= 3, "the hollow-box theorem")
    h = 2**f.dim
    rep = _report(f, (h - 1, h))
    return _judge(f, rep, h, recognize_vertex_form)


def _judge(f: Family, rep: HellyReport, h: int, recognizer) -> HellyReport:
    if rep.defect == INF:
        rep.verdict = Verdict.passed("family intersects")
    elif rep.defect > h:
        rep.verdict = Verdict.fail(f"every {h} members intersect but the family does not (defect {rep.defect})")
    elif rep.defect == h:
        rep.recognizer_outcome = outcome = recognizer(f)
        if outcome.accepted:
            rep.verdict = Verdict.passed(f"defect {h}, recognized as {outcome.form} form")
        else:
            rep.verdict = Verdict.fail(
                f"defect {h} but not of {outcome.form} form (condition {outcome.failed_condition}: {outcome.detail})"
            )
    else:
        rep.verdict = Verdict.passed(f"defect {rep.defect} < {h}; no obligation")
    return rep


def verify_onedim(f: Family) -> HellyReport:
    """Two-point sets: pairwise intersection forces intersection except for the triangle triple."""
    _hollow_family(f, lambda d: d == 1, "the two-point remark")
    rep = _report(f, (2, 3))
    if rep.defect == 3:
        if recognize_onedim_triple(f):
            rep.verdict = Verdict.passed("defect 3, the triangle triple")
        else:
            rep.verdict = Verdict.fail("pairwise intersecting two-point sets, empty, not the triple")
    elif rep.defect != INF and rep.defect > 3:
        rep.verdict = Verdict.fail(f"defect {rep.defect} exceeds 3")
    return rep


# ---------------------------------------------------------------------------
# base-box configurations (one hollow box per vertex)


@dataclass(frozen=True)
class Lemma4Config:
    """A base box ``B`` (possibly degenerate) and one hollow box per vertex index.

    Each ``members[eps]`` has ``B`` inside its hull and misses the vertex ``x_eps``.
    """

    B: Box
    members: dict

    def family(self) -> Family:
        """``Solid B`` followed by the hollow boxes in lexicographic vertex order."""
        return Family(
            (Member.solid(self.B),) + tuple(Member.hollow(self.members[e]) for e in vertex_indices(self.B.dim))
        )

    @classmethod
    def from_family(cls, f: Family) -> "Lemma4Config":
        eps = vertex_indices(f.dim)
        if len(f) != 1 + len(eps) or f[0].kind is not Kind.SOLID or not f.subfamily(range(1, len(f))).all_hollow:
            raise InputError("a base-box family is one solid box followed by 2^d hollow boxes")
        return cls(f[0].body, {e: f[1 + j].body for j, e in enumerate(eps)})


def check_lemma4_config(cfg: Lemma4Config) -> None:
    d = cfg.B.dim
    eps_all = vertex_indices(d)
    if set(cfg.members) != set(eps_all):
        raise PreconditionError("need exactly one hollow box per vertex index")
    for e in eps_all:
        D = cfg.members[e]
        if not isinstance(D, HollowBox) or D.dim != d:
            raise PreconditionError(f"member {e} is not a hollow box of dim {d}")
        if not box_subset(cfg.B, D.shell):
            raise PreconditionError(f"B is not inside the hull of member {e}")
        if hollow_contains(D, vertex(cfg.B, e)):
            raise PreconditionError(f"member {e} contains its own vertex")


def lemma4_trial(cfg: Lemma4Config) -> Verdict:
    """Run all three containment claims on one configuration."""
    check_lemma4_config(cfg)
    d = cfg.B.dim
    fam = cfg.family()
    eps_all = vertex_indices(d)
    col = {e: 1 + j for j, e in enumerate(eps_all)}
    if not dfs_intersect(fam).is_empty:
        return Verdict.fail("B meets every member", part="1")
    arr = Arrangement(fam, within=cfg.B)
    for g in eps_all:
        subset = [0] + [col[e] for e in eps_all if e != g]
        xg = vertex(cfg.B, g)
        if not arr.subset_check(PointSet([xg]), subset):
            return Verdict.fail(f"intersection without member {g} escapes {{x_{g}}}", part="2")
    for g, h in itertools.combinations(eps_all, 2):
        subset = [0] + [col[e] for e in eps_all if e != g and e != h]
        xg, xh = vertex(cfg.B, g), vertex(cfg.B, h)
        differ = sum(a != b for a, b in zip(xg, xh))
        target = segment(xg, xh) if differ == 1 else PointSet([xg, xh])
        if not arr.subset_check(target, subset):
            return Verdict.fail(f"intersection without members {g}, {h} escapes its target", part="3")
    return Verdict.passed()
