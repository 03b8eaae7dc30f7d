"""Patterns over ``{0,1,*}`` and covers of the Boolean cube by them.

Patterns and bit strings are plain Python strings (``"0*1"``).  Position 0
is the most significant bit when a bit string is read as an integer, so
integer order is lexicographic order with ``0 < 1``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from math import factorial
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, PreconditionError, ResourceCapExceeded

MAX_COVER_DIM = 24
_SYMBOLS = frozenset("01*")
_ORDER = str.maketrans("01*", "012")


def pattern_key(p: str) -> str:
    """Sort key with ``0 < 1 < *`` (plain ASCII puts ``*`` first)."""
    return p.translate(_ORDER)


def _check_pattern(p: str) -> str:
    if not isinstance(p, str) or not p or set(p) - _SYMBOLS:
        raise InputError(f"not a pattern over 0, 1, *: {p!r}")
    return p


def _as_patterns(c: Iterable[str]) -> tuple:
    """Validate, deduplicate (keeping first occurrences) and return ``(patterns, d)``."""
    seen = {}
    for p in c:
        seen.setdefault(_check_pattern(p), None)
    pats = tuple(seen)
    if not pats:
        raise InputError("empty pattern set")
    d = len(pats[0])
    for p in pats:
        if len(p) != d:
            raise InputError(f"pattern {p!r} has length {len(p)}, expected {d}")
    return pats, d


def matches(eps: str, rho: str) -> bool:
    if len(eps) != len(rho):
        raise InputError(f"length mismatch: {eps!r} vs {rho!r}")
    for e, r in zip(eps, rho):
        if e not in "01":
            raise InputError(f"not a bit string: {eps!r}")
        if r != "*" and r != e:
            if r not in "01":
                raise InputError(f"not a pattern: {rho!r}")
            return False
    return True


def match_set(rho: str) -> list:
    """Every bit string matching ``rho``, lexicographic."""
    choices = ["01" if r == "*" else r for r in _check_pattern(rho)]
    return ["".join(t) for t in itertools.product(*choices)]


def _encode(rho: str) -> tuple:
    care = val = 0
    for r in rho:
        care <<= 1
        val <<= 1
        if r != "*":
            care |= 1
            val |= r == "1"
    return care, val


def _bits(x: int, d: int) -> str:
    return format(x, f"0{d}b")


def _coverage(pats: Sequence[str], d: int) -> np.ndarray:
    """How many patterns match each string, saturated at 2."""
    if d > MAX_COVER_DIM:
        raise ResourceCapExceeded(f"d={d} exceeds the enumeration cap d <= {MAX_COVER_DIM}")
    xs = np.arange(1 << d, dtype=np.int64)
    counts = np.zeros(1 << d, dtype=np.uint8)
    for p in pats:
        care, val = _encode(p)
        counts += (xs & care) == val
        np.minimum(counts, 2, out=counts)
    return counts


def is_cover(c: Iterable[str]) -> tuple:
    """``(True, None)`` if every string matches, else ``(False, least uncovered string)``."""
    pats, d = _as_patterns(c)
    counts = _coverage(pats, d)
    missing = np.flatnonzero(counts == 0)
    if missing.size:
        return False, _bits(int(missing[0]), d)
    return True, None


def is_minimal_cover(c: Iterable[str]) -> bool:
    pats, d = _as_patterns(c)
    counts = _coverage(pats, d)
    if not counts.all():
        return False
    xs = np.arange(1 << d, dtype=np.int64)
    for p in pats:
        care, val = _encode(p)
        # removable iff everything it matches is matched twice
        if (counts[(xs & care) == val] >= 2).all():
            return False
    return True


def minimalize(c: Iterable[str]) -> tuple:
    """Drop redundant patterns, trying them in input order."""
    pats, d = _as_patterns(c)
    if d > MAX_COVER_DIM:
        raise ResourceCapExceeded(f"d={d} exceeds the enumeration cap d <= {MAX_COVER_DIM}")
    xs = np.arange(1 << d, dtype=np.int64)
    masks = []
    counts = np.zeros(1 << d, dtype=np.int64)
    for p in pats:
        care, val = _encode(p)
        m = (xs & care) == val
        masks.append(m)
        counts += m
    if not counts.all():
        raise PreconditionError("minimalize needs a cover")
    keep = []
    for p, m in zip(pats, masks):
        if (counts[m] >= 2).all():
            counts -= m
        else:
            keep.append(p)
    return tuple(keep)


# ---------------------------------------------------------------------------
# structural analysis of minimal covers


class Relation(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def num_trichotomy(d: int, s: int) -> Relation:
    """Compare ``2**(d-s)`` with ``2**d - 2*s`` exactly."""
    if not (isinstance(d, int) and isinstance(s, int)) or s < 0 or d < s:
        raise InputError(f"need integers 0 <= s <= d, got d={d!r}, s={s!r}")
    lhs, rhs = 2 ** (d - s), 2**d - 2 * s
    if lhs < rhs:
        return Relation.LESS
    return Relation.EQUAL if lhs == rhs else Relation.GREATER


def lemma2_case(d: int, s: int) -> Relation:
    """The closed-form case list for :func:`num_trichotomy`."""
    if (d, s) in ((1, 1), (2, 2)):
        return Relation.GREATER
    if s == 0 or (d, s) == (2, 1):
        return Relation.EQUAL
    return Relation.LESS


# literal exceptional covers: frozenset -> (relation, case id)
_EXCEPTIONS = {
    frozenset({"*"}): (Relation.GREATER, "{*}"),
    frozenset({"**"}): (Relation.GREATER, "{**}"),
    frozenset({"0*", "1*"}): (Relation.EQUAL, "{0*,1*}"),
    frozenset({"*0", "*1"}): (Relation.EQUAL, "{*0,*1}"),
}


@dataclass(frozen=True)
class Lemma3Class:
    relation: Relation
    case: Optional[str] = None

    @property
    def consistent(self) -> bool:
        """LESS needs no case; EQUAL/GREATER must be a listed exceptional cover."""
        return (self.relation is Relation.LESS) == (self.case is None)

    def __str__(self):
        return self.relation.value if self.case is None else f"{self.relation.value}({self.case})"


@dataclass
class CoverReport:
    patterns: tuple
    dim: int
    is_cover: bool
    is_minimal: bool
    position_sets: list
    star_positions: frozenset
    s: int
    size: int
    lemma1_ok: bool
    lemma1_equality_case: bool
    lemma3_class: Lemma3Class
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "patterns": list(self.patterns),
            "dim": self.dim,
            "is_cover": self.is_cover,
            "is_minimal": self.is_minimal,
            "position_sets": ["".join(sorted(e, key=pattern_key)) for e in self.position_sets],
            "star_positions": sorted(self.star_positions),
            "s": self.s,
            "size": self.size,
            "lemma1_ok": self.lemma1_ok,
            "lemma1_equality_case": self.lemma1_equality_case,
            "lemma3_class": {"relation": self.lemma3_class.relation.value, "case": self.lemma3_class.case},
            "notes": list(self.notes),
        }


_ALLOWED_E = (frozenset("*"), frozenset("01"), frozenset("01*"))


def _cube_with_stars(d: int, stars: frozenset) -> frozenset:
    choices = ["*" if i in stars else "01" for i in range(d)]
    return frozenset("".join(t) for t in itertools.product(*choices))


def analyze(c: Iterable[str]) -> CoverReport:
    pats, d = _as_patterns(c)
    if not is_minimal_cover(pats):
        raise PreconditionError("analyze needs a minimal cover")
    E = [frozenset(p[i] for p in pats) for i in range(d)]
    J = frozenset(i for i in range(d) if E[i] == {"*"})
    s = len(J)
    size = len(pats)
    notes = []
    ok = True
    for i, e in enumerate(E):
        if e not in _ALLOWED_E:
            ok = False
            notes.append(f"position {i} has symbol set {sorted(e)}")
    bound = 2 ** (d - s)
    if size > bound:
        ok = False
        notes.append(f"size {size} exceeds 2^(d-s) = {bound}")
    equality = size == bound
    if equality != (frozenset(pats) == _cube_with_stars(d, J)):
        ok = False
        notes.append("equality in the size bound does not match the full-subcube shape")

    rel = num_trichotomy_sized(size, d, s)
    case = None
    if rel is not Relation.LESS:
        key = frozenset(pats)
        if key in _EXCEPTIONS and _EXCEPTIONS[key][0] is rel:
            case = _EXCEPTIONS[key][1]
        elif rel is Relation.EQUAL and s == 0 and key == _cube_with_stars(d, frozenset()):
            case = "{0,1}^d"
        else:
            notes.append(f"size {size} vs 2^d-2s = {2**d - 2*s} is {rel.value} but the cover is not a listed exception")
    return CoverReport(
        patterns=tuple(sorted(pats, key=pattern_key)),
        dim=d,
        is_cover=True,
        is_minimal=True,
        position_sets=E,
        star_positions=J,
        s=s,
        size=size,
        lemma1_ok=ok,
        lemma1_equality_case=equality,
        lemma3_class=Lemma3Class(rel, case),
        notes=notes,
    )


def num_trichotomy_sized(size: int, d: int, s: int) -> Relation:
    rhs = 2**d - 2 * s
    if size < rhs:
        return Relation.LESS
    return Relation.EQUAL if size == rhs else Relation.GREATER


def project_stars(c: Iterable[str]) -> tuple:
    """Delete every position that holds only ``*``; returns ``(patterns, dropped positions)``."""
    pats, d = _as_patterns(c)
    J = [i for i in range(d) if all(p[i] == "*" for p in pats)]
    keep = [i for i in range(d) if i not in J]
    if not keep:
        return (), tuple(J)
    return tuple(dict.fromkeys("".join(p[i] for i in keep) for p in pats)), tuple(J)


# ---------------------------------------------------------------------------
# symmetry and canonical forms

HYPEROCTAHEDRAL = "hyperoctahedral"
GLOBAL_SWAP = "global"


def apply_symmetry(c: Iterable[str], perm: Sequence[int], flips: Sequence[bool]) -> frozenset:
    """Position ``j`` of the image takes position ``perm[j]`` of the source, then flips if ``flips[j]``."""
    swap = str.maketrans("01", "10")
    out = set()
    for p in c:
        q = "".join(p[perm[j]].translate(swap) if flips[j] else p[perm[j]] for j in range(len(perm)))
        out.add(q)
    return frozenset(out)


def group_elements(d: int, group: str = HYPEROCTAHEDRAL):
    if group == HYPEROCTAHEDRAL:
        flip_sets = list(itertools.product((False, True), repeat=d))
    elif group == GLOBAL_SWAP:
        flip_sets = [(False,) * d, (True,) * d]
    else:
        raise InputError(f"unknown symmetry group {group!r}")
    for perm in itertools.permutations(range(d)):
        for flips in flip_sets:
            yield perm, flips


def group_order(d: int, group: str = HYPEROCTAHEDRAL) -> int:
    return factorial(d) * (2**d if group == HYPEROCTAHEDRAL else 2)


def random_group_element(d: int, rng: random.Random, group: str = HYPEROCTAHEDRAL) -> tuple:
    perm = list(range(d))
    rng.shuffle(perm)
    if group == HYPEROCTAHEDRAL:
        flips = tuple(rng.random() < 0.5 for _ in range(d))
    else:
        flips = (rng.random() < 0.5,) * d
    return tuple(perm), flips


def _sorted_key(c) -> tuple:
    return tuple(sorted(pattern_key(p) for p in c))


def canonical_form(c: Iterable[str], group: str = HYPEROCTAHEDRAL) -> tuple:
    """Least image of ``c`` under the group, as a tuple sorted with ``0 < 1 < *``."""
    pats, d = _as_patterns(c)
    best = None
    for perm, flips in group_elements(d, group):
        key = _sorted_key(apply_symmetry(pats, perm, flips))
        if best is None or key < best:
            best = key
    back = str.maketrans("012", "01*")
    return tuple(k.translate(back) for k in best)


def format_cover(c: Iterable[str]) -> str:
    return "{" + ",".join(sorted(c, key=pattern_key)) + "}"


# ---------------------------------------------------------------------------
# enumeration

EXHAUSTIVE_MAX_DIM = 2


def all_patterns(d: int) -> list:
    return sorted(("".join(t) for t in itertools.product("01*", repeat=d)), key=pattern_key)


def minimal_covers_bruteforce(d: int) -> list:
    """Every minimal cover of ``{0,1}^d`` by filtering all subsets of the ``3^d`` patterns."""
    if d < 1 or d > EXHAUSTIVE_MAX_DIM:
        raise ResourceCapExceeded(f"exhaustive subset filter only for 1 <= d <= {EXHAUSTIVE_MAX_DIM}")
    pats = all_patterns(d)
    found = []
    for r in range(1, len(pats) + 1):
        for sub in itertools.combinations(pats, r):
            if is_minimal_cover(sub):
                found.append(frozenset(sub))
    return found


def minimal_covers_search(d: int, node_budget: int = 2_000_000) -> list:
    """Every minimal cover via branching on the least uncovered string.

    A partial choice in which some pattern is already redundant is pruned:
    adding patterns never makes it irredundant again.
    """
    if d < 1:
        raise InputError("d must be positive")
    n = 1 << d
    pats = all_patterns(d)
    sets = []
    for p in pats:
        care, val = _encode(p)
        sets.append(frozenset(x for x in range(n) if x & care == val))
    by_string = [[k for k, s in enumerate(sets) if x in s] for x in range(n)]

    found = set()
    seen = set()
    nodes = 0

    def redundant(chosen, counts):
        return any(all(counts[x] >= 2 for x in sets[k]) for k in chosen)

    def rec(chosen, counts):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceCapExceeded(f"minimal-cover search exceeded {node_budget} nodes")
        first = next((x for x in range(n) if counts[x] == 0), None)
        if first is None:
            found.add(frozenset(pats[k] for k in chosen))
            return
        for k in by_string[first]:
            nxt = chosen | {k}
            if nxt in seen:
                continue
            seen.add(nxt)
            for x in sets[k]:
                counts[x] += 1
            if not redundant(nxt, counts):
                rec(nxt, counts)
            for x in sets[k]:
                counts[x] -= 1

    rec(frozenset(), [0] * n)
    return sorted(found, key=_sorted_key)


def enumerate_minimal_covers(
    d: int,
    group: str = HYPEROCTAHEDRAL,
    allow_search: bool = False,
    node_budget: int = 2_000_000,
) -> list:
    """Distinct canonical forms of all minimal covers of ``{0,1}^d``.

    ``d <= 2`` uses the exhaustive subset filter. Larger ``d`` requires
    ``allow_search=True`` and runs the pruned search under ``node_budget``.
    """
    if d <= EXHAUSTIVE_MAX_DIM:
        raw = minimal_covers_bruteforce(d)
    elif allow_search:
        raw = minimal_covers_search(d, node_budget)
    else:
        raise ResourceCapExceeded(f"d={d} is beyond exhaustive mode; pass allow_search=True")
    classes = {canonical_form(c, group) for c in raw}
    return sorted(classes, key=_sorted_key)
