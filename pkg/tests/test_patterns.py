import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hollow_helly import patterns as pc
from hollow_helly.errors import InputError, PreconditionError, ResourceCapExceeded
from hollow_helly.patterns import Relation

LISTED_D2 = [["**"], ["0*", "1*"], ["0*", "10", "11"], ["0*", "*0", "11"], ["00", "01", "10", "11"]]


def covers_by_brute_force(c, d):
    return all(any(pc.matches("".join(e), r) for r in c) for e in itertools.product("01", repeat=d))


def test_matches_examples():
    assert pc.matches("010", "0*0")
    assert not pc.matches("110", "0**")
    assert all(pc.matches("".join(e), "****") for e in itertools.product("01", repeat=4))
    with pytest.raises(InputError):
        pc.matches("01", "0")


def test_is_cover_examples():
    assert pc.is_cover(["0*", "1*"]) == (True, None)
    assert pc.is_cover(["0*", "10"]) == (False, "11")
    assert pc.is_cover(["**"]) == (True, None)


def test_is_cover_cap():
    with pytest.raises(ResourceCapExceeded):
        pc.is_cover(["*" * 25])


def test_is_minimal_cover_examples():
    assert pc.is_minimal_cover(["0*", "1*"])
    assert not pc.is_minimal_cover(["0*", "1*", "11"])
    assert pc.is_minimal_cover(["00", "01", "10", "11"])
    assert not pc.is_minimal_cover(["0*"])


def test_minimalize_examples():
    assert pc.minimalize(["0*", "1*", "11"]) == ("0*", "1*")
    assert pc.minimalize(["0*", "*0", "11"]) == ("0*", "*0", "11")
    assert pc.minimalize(["**", "00"]) == ("**",)
    with pytest.raises(PreconditionError):
        pc.minimalize(["0*"])


def test_analyze_examples():
    r = pc.analyze(["00", "01", "10", "11"])
    assert r.position_sets == [frozenset("01")] * 2 and r.s == 0 and r.size == 4
    assert r.lemma1_ok and r.lemma1_equality_case
    assert r.lemma3_class.relation is Relation.EQUAL and r.lemma3_class.case == "{0,1}^d"

    r = pc.analyze(["**"])
    assert r.position_sets == [frozenset("*")] * 2 and r.s == 2 and r.star_positions == {0, 1}
    assert r.lemma3_class.relation is Relation.GREATER and r.lemma3_class.case == "{**}"

    r = pc.analyze(["0*", "*0", "11"])
    assert r.s == 0 and r.size == 3 and r.lemma3_class.relation is Relation.LESS
    assert r.lemma1_ok and not r.lemma1_equality_case

    with pytest.raises(PreconditionError):
        pc.analyze(["0*", "1*", "11"])


def test_num_trichotomy_examples():
    assert pc.num_trichotomy(1, 1) is Relation.GREATER
    assert pc.num_trichotomy(2, 1) is Relation.EQUAL
    assert pc.num_trichotomy(3, 1) is Relation.LESS
    with pytest.raises(InputError):
        pc.num_trichotomy(2, 3)


def test_num_trichotomy_matches_case_list_to_64():
    for d in range(65):
        for s in range(d + 1):
            direct = 2 ** (d - s) - (2**d - 2 * s)
            rel = pc.num_trichotomy(d, s)
            assert rel is {-1: Relation.LESS, 0: Relation.EQUAL, 1: Relation.GREATER}[(direct > 0) - (direct < 0)]
            assert rel is pc.lemma2_case(d, s)


def test_enumerate_d1_and_d2():
    assert pc.enumerate_minimal_covers(1) == [("0", "1"), ("*",)]
    got = set(pc.enumerate_minimal_covers(2))
    assert got == {pc.canonical_form(c) for c in LISTED_D2}
    assert len(got) == 5


def test_raw_minimal_cover_count_d2():
    # frozen from the exhaustive filter over all 512 subsets of {0,1,*}^2
    raw = pc.minimal_covers_bruteforce(2)
    assert len(raw) == 12
    assert all(covers_by_brute_force(c, 2) for c in raw)


def test_search_agrees_with_bruteforce_d2():
    assert set(pc.minimal_covers_search(2)) == set(pc.minimal_covers_bruteforce(2))
    assert set(pc.minimal_covers_search(1)) == set(pc.minimal_covers_bruteforce(1))


def test_search_d3_complete_on_samples():
    found = set(pc.minimal_covers_search(3))
    assert all(pc.is_minimal_cover(c) for c in found)
    rng = random.Random(3)
    pats = pc.all_patterns(3)
    for _ in range(500):
        c = rng.sample(pats, rng.randint(1, 10)) + ["***"]
        rng.shuffle(c)
        assert frozenset(pc.minimalize(c)) in found


def test_search_budget():
    with pytest.raises(ResourceCapExceeded):
        pc.minimal_covers_search(3, node_budget=10)
    with pytest.raises(ResourceCapExceeded):
        pc.enumerate_minimal_covers(3)


def test_global_swap_group_splits_a_class():
    # per-position swaps give exactly the five listed classes; a single global swap does not
    assert len(pc.enumerate_minimal_covers(2, group=pc.GLOBAL_SWAP)) == 6


def test_canonical_form_examples():
    assert pc.canonical_form(["1*", "0*"]) == pc.canonical_form(["0*", "1*"])
    assert pc.canonical_form(["*0", "*1"]) == pc.canonical_form(["0*", "1*"])
    # flip position 0 of {0*,10,11} by hand: 0* -> 1*, 10 -> 00, 11 -> 01
    assert pc.apply_symmetry(["0*", "10", "11"], (0, 1), (True, False)) == {"1*", "00", "01"}
    assert pc.canonical_form(["0*", "10", "11"]) == pc.canonical_form(["1*", "00", "01"])


def test_group_order():
    for d in (1, 2, 3):
        assert len(list(pc.group_elements(d))) == pc.group_order(d) == [2, 8, 48][d - 1]


@st.composite
def pattern_sets(draw, max_d=4):
    d = draw(st.integers(1, max_d))
    pats = draw(st.lists(st.text("01*", min_size=d, max_size=d), min_size=1, max_size=8, unique=True))
    return pats, d


@settings(max_examples=200)
@given(pattern_sets(), st.randoms(use_true_random=False))
def test_canonical_form_constant_on_orbits(args, rnd):
    pats, d = args
    perm, flips = pc.random_group_element(d, rnd)
    img = pc.apply_symmetry(pats, perm, flips)
    cf = pc.canonical_form(pats)
    assert pc.canonical_form(img) == cf
    assert pc.canonical_form(cf) == cf


@settings(max_examples=200)
@given(pattern_sets(max_d=5))
def test_is_cover_agrees_with_brute_force(args):
    pats, d = args
    ok, miss = pc.is_cover(pats)
    assert ok == covers_by_brute_force(pats, d)
    if not ok:
        uncovered = ["".join(e) for e in itertools.product("01", repeat=d) if not any(pc.matches("".join(e), r) for r in pats)]
        assert miss == uncovered[0]


@settings(max_examples=200)
@given(pattern_sets(max_d=4), st.text("01*", min_size=4, max_size=4))
def test_coverage_monotone(args, extra):
    pats, d = args
    extra = extra[:d]
    if pc.is_cover(pats)[0]:
        assert pc.is_cover(pats + [extra])[0]


@settings(max_examples=300)
@given(pattern_sets(max_d=6))
def test_minimalize_then_lemmas(args):
    pats, d = args
    pats = pats + ["*" * d]
    m = pc.minimalize(pats)
    assert set(m) <= set(pats)
    assert pc.is_minimal_cover(m)
    r = pc.analyze(m)
    assert r.lemma1_ok, r.notes
    assert r.lemma3_class.consistent, r.notes
    # dropping all-star positions keeps a minimal cover of the same size
    proj, J = pc.project_stars(m)
    assert len(J) == r.s
    if proj:
        assert len(proj) == len(m) and pc.is_minimal_cover(proj)
    else:
        assert m == ("*" * d,)
