import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hollow_helly.errors import InputError, PreconditionError
from hollow_helly.extremal import (
    FacetFamilySpec,
    VertexFamilySpec,
    facet_in_hollow,
    gen_facet_family,
    gen_vertex_family,
    pattern_of,
    recognize_facet_form,
    recognize_onedim_triple,
    recognize_vertex_form,
)
from hollow_helly.geometry import Box, HollowBox, facet, hollow_contains, point, vertex, vertex_indices
from hollow_helly.intersection import Family
from hollow_helly.patterns import matches

from conftest import H, S

F = Fraction


def shells(f):
    return [(m.body.shell.lo, m.body.shell.hi) for m in f.members]


def test_default_facet_family_matches_figure(figure1):
    assert gen_facet_family(FacetFamilySpec.default(2)) == figure1


def test_facet_family_shape():
    for d in (2, 3, 4):
        f = gen_facet_family(FacetFamilySpec.default(d))
        assert len(f) == 2 * d + 1 and f.all_hollow
        B = f[0].body.shell
        for k in range(1, len(f)):
            held = [(i, j) for i in range(d) for j in (0, 1) if facet_in_hollow(facet(B, i, j), f[k].body)]
            assert held == [divmod(k - 1, 2)]
            assert hollow_contains(f[k].body, (F(2),) * d)


def test_vertex_family_shape():
    for d in (1, 2, 3, 4):
        spec = VertexFamilySpec.default(d)
        f = gen_vertex_family(spec)
        assert len(f) == 2**d
        for m, eps in zip(f.members, vertex_indices(d)):
            for other in vertex_indices(d):
                assert hollow_contains(m.body, vertex(spec.B, other)) == (other != eps)


def test_vertex_family_per_axis_margins():
    spec = VertexFamilySpec(Box.from_bounds([0, 0], [2, 3]), margins=(1, F(1, 2)))
    assert shells(gen_vertex_family(spec))[0] == (point(-1, F(-1, 2)), point(2, 3))
    assert recognize_vertex_form(gen_vertex_family(spec)).accepted


@pytest.mark.parametrize(
    "build",
    [
        lambda: FacetFamilySpec(Box.cube(2, 0, 4), (0, 2)),
        lambda: FacetFamilySpec(Box.cube(1, 0, 4), (2,)),
        lambda: FacetFamilySpec(Box.cube(2, 0, 4), (2, 2), slack=0),
        lambda: VertexFamilySpec(Box.from_bounds([0, 0], [0, 1])),
        lambda: VertexFamilySpec(Box.cube(2), margin=-1),
        lambda: VertexFamilySpec(Box.cube(2), margins=(1,)),
    ],
)
def test_spec_validation(build):
    with pytest.raises(InputError):
        build()


def test_pattern_of_examples():
    unit = Box.cube(2)
    assert pattern_of(HollowBox.from_bounds([-1, -1], [1, 1]), unit) == "00"
    assert pattern_of(HollowBox.from_bounds([-1, 0], [2, 1]), unit) is None
    assert pattern_of(HollowBox.from_bounds([-1, -1], [2, 2]), unit) == "**"
    assert pattern_of(HollowBox.from_bounds([0, -1], [2, 1]), unit) == "10"
    with pytest.raises(PreconditionError):
        pattern_of(HollowBox.from_bounds([0, 0], [1, 1]), Box.cube(2, -1, 1))


@settings(max_examples=300)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=d, max_size=d),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=d, max_size=d),
)))
def test_pattern_of_lists_exactly_the_missed_vertices(args):
    raw, pads = args
    B = Box.from_bounds([min(a) for a in raw], [max(a) for a in raw])
    lo = [s.lo - p for s, (p, _) in zip(B.sides, pads)]
    hi = [s.hi + q for s, (_, q) in zip(B.sides, pads)]
    if any(a == b for a, b in zip(lo, hi)):
        return
    D = HollowBox.from_bounds(lo, hi)
    rho = pattern_of(D, B)
    for eps in vertex_indices(B.dim):
        missed = not hollow_contains(D, vertex(B, eps))
        assert missed == (rho is not None and matches(eps, rho))


def test_facet_recognizer_accepts_generated(figure1):
    r = recognize_facet_form(figure1)
    assert r.accepted and r.chosen_B == Box.cube(2, 0, 4) and r.chosen_p == point(2, 2)
    assert r.role_map == {0: "boundary", 1: "facet 0^0", 2: "facet 0^1", 3: "facet 1^0", 4: "facet 1^1"}
    for d in (3, 4):
        assert recognize_facet_form(gen_facet_family(FacetFamilySpec.default(d))).accepted


def test_facet_recognizer_rejections(figure1):
    m = list(figure1.members)
    short = Family(tuple(m[:-1]))
    assert recognize_facet_form(short).failed_condition == "4"
    # owner of facet 0^0 narrowed so it no longer reaches p = (2, 2)
    moved = Family(tuple(m[:1] + [H([0, -1], [1, 5])] + m[2:]))
    r = recognize_facet_form(moved)
    assert not r.accepted and r.failed_condition == "2"
    # owner of facet 1^0 widened so it holds facets 0^0 and 1^0
    wide = Family(tuple(m[:3] + [H([0, 0], [5, 5])] + m[4:]))
    assert recognize_facet_form(wide).failed_condition == "3"
    assert recognize_facet_form(Family.of(H([0], [1]), H([1], [2]))).failed_condition == "d"
    assert recognize_facet_form(figure1.with_member(S([0, 0], [1, 1]))).failed_condition == "hollow"


def test_facet_recognizer_collapses_duplicates(figure1):
    r = recognize_facet_form(figure1.with_member(figure1[2]))
    assert r.accepted and r.role_map[5] == r.role_map[2]


def test_vertex_recognizer_accepts_generated(figure2):
    r = recognize_vertex_form(figure2)
    assert r.accepted and r.chosen_B == Box.cube(2)
    for d in (3, 4):
        assert recognize_vertex_form(gen_vertex_family(VertexFamilySpec.default(d))).accepted


def test_vertex_recognizer_rejections(figure2):
    m = list(figure2.members)
    r = recognize_vertex_form(Family(tuple(m[1:])))
    assert r.failed_condition == "2'" and "00" in r.detail
    # first member enlarged to miss both left vertices
    r = recognize_vertex_form(Family(tuple([H([-1, -1], [1, 2])] + m[1:])))
    assert r.failed_condition == "3'"
    r = recognize_vertex_form(Family.of(H([0, 0], [1, 1]), H([1, 0], [2, 1])))
    assert r.failed_condition == "1'"
    assert recognize_vertex_form(Family.of(H([0, 0], [1, 1]), H([3, 3], [4, 4]))).failed_condition == "1'"
    assert recognize_vertex_form(figure2.with_member(S([0, 0], [1, 1]))).failed_condition == "hollow"


def test_vertex_recognizer_allows_members_missing_nothing(figure2):
    r = recognize_vertex_form(figure2.with_member(H([-2, -2], [3, 3])))
    # the meet is still [0,1]^2 and the big box misses every vertex of it, which breaks 3'
    assert r.failed_condition == "3'"
    r = recognize_vertex_form(figure2.with_member(H([0, -1], [1, 2])))
    assert r.accepted and r.role_map[4] == "contains all vertices"


def _rigid(f, rnd):
    members = list(f.members)
    rnd.shuffle(members)
    shift = [rnd.randint(-5, 5) for _ in range(f.dim)]
    scale = F(rnd.choice([1, 2, 3]), rnd.choice([1, 2]))

    def move(x):
        return [scale * c + t for c, t in zip(x, shift)]

    return Family(tuple(H(move(m.body.shell.lo), move(m.body.shell.hi)) for m in members))


@pytest.mark.parametrize("seed", range(20))
def test_recognizers_invariant_under_reorder_translate_scale(seed, figure1, figure2):
    rnd = random.Random(seed)
    assert recognize_facet_form(_rigid(figure1, rnd)).accepted
    assert recognize_vertex_form(_rigid(figure2, rnd)).accepted
    f3 = gen_vertex_family(VertexFamilySpec.default(3))
    assert recognize_vertex_form(_rigid(f3, rnd)).accepted
    assert not recognize_vertex_form(_rigid(Family(f3.members[1:]), rnd)).accepted


def test_onedim_triple():
    assert recognize_onedim_triple(Family.of(H([0], [1]), H([1], [2]), H([0], [2])))
    assert recognize_onedim_triple(Family.of(H([0], [1]), H([1], [2]), H([0], [2]), H([1], [2])))
    assert not recognize_onedim_triple(Family.of(H([0], [1]), H([1], [2]), H([0], [3])))
    assert not recognize_onedim_triple(Family.of(H([0], [1]), H([1], [2])))
    assert not recognize_onedim_triple(Family.of(H([0], [1]), H([1], [2]), S([0], [2])))
    with pytest.raises(InputError):
        recognize_onedim_triple(Family.of(H([0, 0], [1, 1])))
