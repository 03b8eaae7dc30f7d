import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hollow_helly.errors import InputError, PreconditionError, ResourceCapExceeded
from hollow_helly.extremal import VertexFamilySpec, gen_vertex_family
from hollow_helly.geometry import Box, HollowBox, PointSet, point, segment
from hollow_helly.intersection import (
    Family,
    Member,
    build_grid,
    dfs_intersect,
    intersection_reps,
    oracle_intersect,
    subset_check,
)

from conftest import H, S, brute_empty, brute_points, families

F = Fraction


def test_family_validation():
    with pytest.raises(InputError):
        Family(())
    with pytest.raises(InputError):
        Family.of(H([0], [1]), H([0, 0], [1, 1]))


def test_build_grid_examples():
    assert build_grid(Family.of(H([0], [1]))).candidates == ((F(0), F(1, 2), F(1)),)
    g = build_grid(Family.of(H([0, 0], [2, 2]), H([1, 1], [3, 3])))
    expected = tuple(F(k, 2) for k in range(7))
    assert g.candidates == (expected, expected)
    assert build_grid(Family.of(S([0], [0]))).candidates == ((F(0),),)


@given(families())
def test_grid_invariants(f):
    g = build_grid(f)
    for ends, cands in zip(g.endpoints, g.candidates):
        assert list(cands) == sorted(set(cands))
        assert len(cands) == 2 * len(ends) - 1
        assert set(ends) <= set(cands)


def test_oracle_examples(figure1):
    twin = Family.of(H([0, 0], [1, 1]), H([0, 0], [1, 1]))
    assert oracle_intersect(twin).witness == point(0, 0)
    assert oracle_intersect(figure1).is_empty
    assert oracle_intersect(Family.of(S([0, 0], [2, 2]), S([1, 1], [3, 3]))).witness == point(1, 1)


def test_dfs_examples(figure1):
    h = Family.of(H([3, 1], [5, 4]))
    assert dfs_intersect(h).witness == point(3, 1)
    assert dfs_intersect(figure1).is_empty
    assert dfs_intersect(gen_vertex_family(VertexFamilySpec.default(3))).is_empty


def test_oracle_cap(monkeypatch):
    f = Family.of(*[H([k, k], [k + 20, k + 20]) for k in range(10)])
    with pytest.raises(ResourceCapExceeded):
        oracle_intersect(f, cap=8)
    monkeypatch.setenv("HH_CAND_CAP", "8")
    with pytest.raises(ResourceCapExceeded):
        oracle_intersect(f)
    # the backtracking search has no grid and is unaffected
    dfs_intersect(f)


def test_intersection_reps_examples():
    assert intersection_reps(Family.of(H([0], [1]), H([0], [2]))) == [point(0)]
    # frozen from the quarter-lattice brute force in conftest
    reps = intersection_reps(Family.of(H([0, 0], [2, 2]), S([1, 0], [1, 2])))
    assert reps == [point(1, 0), point(1, 2)]
    assert intersection_reps(Family.of(H([0], [1]), H([2], [3]))) == []


def _lemma4_setup():
    vf = gen_vertex_family(VertexFamilySpec.default(2))  # members in order 00, 01, 10, 11
    return S([0, 0], [1, 1]), vf.members


def test_subset_check_examples():
    assert subset_check(Family.of(H([0], [1]), H([2], [3])), PointSet([point(7)]))
    B, D = _lemma4_setup()
    assert subset_check(Family((B,) + D[1:]), PointSet([point(0, 0)]))
    assert subset_check(Family((B,) + D[2:]), segment(point(0, 0), point(0, 1)))
    # and the containment is tight in the second case
    assert not subset_check(Family((B,) + D[2:]), PointSet([point(0, 0), point(0, 1)]))


def test_subset_check_matches_lattice_oracle():
    B, D = _lemma4_setup()
    pts = brute_points(Family((B,) + D[2:]), F(1, 4))
    assert pts == [point(0, F(k, 4)) for k in range(5)]


def test_subset_check_rejects_off_grid_targets():
    f = Family.of(H([0, 0], [2, 2]), S([1, 0], [1, 2]))
    with pytest.raises(PreconditionError):
        subset_check(f, PointSet([point(F(1, 3), 0)]))
    with pytest.raises(PreconditionError):
        subset_check(f, segment(point(0, 0), point(2, 2)))


@settings(max_examples=400, deadline=None)
@given(families(max_size=5))
def test_deciders_agree_with_lattice_brute_force(f):
    a, b = dfs_intersect(f), oracle_intersect(f)
    expected_empty = brute_empty(f)
    assert a.is_empty == b.is_empty == expected_empty
    for res in (a, b):
        if not res.is_empty:
            assert all(m.contains(res.witness) for m in f.members)


@settings(max_examples=200, deadline=None)
@given(families(d=2, max_size=4))
def test_oracle_witness_is_lex_least_lattice_point(f):
    res = oracle_intersect(f)
    pts = brute_points(f)
    if pts:
        assert res.witness == min(pts)
    else:
        assert res.is_empty


@settings(max_examples=200, deadline=None)
@given(families(max_size=5), st.randoms(use_true_random=False))
def test_oracle_reorder_invariant(f, rnd):
    members = list(f.members)
    rnd.shuffle(members)
    assert oracle_intersect(Family(tuple(members))) == oracle_intersect(f)


@settings(max_examples=200, deadline=None)
@given(families(max_size=4), families(max_size=1))
def test_adding_members_never_creates_points(f, extra):
    if extra.dim != f.dim:
        return
    g = f.with_member(extra[0])
    if dfs_intersect(f).is_empty:
        assert dfs_intersect(g).is_empty
        assert oracle_intersect(g).is_empty


@settings(max_examples=200, deadline=None)
@given(
    families(d=2, max_size=4),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.tuples(st.integers(1, 3), st.sampled_from([F(1, 2), F(1), F(3)])),
)
def test_translation_and_scaling_equivariance(f, shift, scale):
    def tr(x):
        return tuple(s * c + t for c, s, t in zip(x, scale, shift))

    def move(m):
        lo, hi = tr(m.hull.lo), tr(m.hull.hi)
        if m.kind.value == "solid":
            return Member.solid(Box.from_bounds(lo, hi))
        return Member.hollow(HollowBox.from_bounds(lo, hi))

    g = Family(tuple(move(m) for m in f.members))
    a, b = oracle_intersect(f), oracle_intersect(g)
    assert a.is_empty == b.is_empty == dfs_intersect(g).is_empty
    if not a.is_empty:
        # positive scaling preserves lexicographic order, so the lex-least witness maps over
        assert b.witness == tr(a.witness)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.lists(
    st.tuples(*[st.tuples(st.integers(0, 5), st.integers(0, 5)) for _ in range(d)]), min_size=1, max_size=6)))
def test_solid_boxes_pairwise_implies_global(raw):
    boxes = [Box.from_bounds([min(a) for a in b], [max(a) for a in b]) for b in raw]
    f = Family(tuple(Member.solid(b) for b in boxes))
    pairwise = all(
        not dfs_intersect(f.subfamily([i, j])).is_empty for i in range(len(f)) for j in range(i + 1, len(f))
    )
    if pairwise:
        assert not dfs_intersect(f).is_empty


@settings(max_examples=150, deadline=None)
@given(families(d=2, max_size=4))
def test_reps_are_exactly_the_grid_points_in_every_member(f):
    g = build_grid(f)
    expected = sorted(p for p in itertools.product(*g.candidates) if all(m.contains(p) for m in f.members))
    assert intersection_reps(f) == expected
