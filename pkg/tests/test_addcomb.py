from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from smalldoubling import addcomb
from smalldoubling.core import CyclicSet, Subgroup, sumset
from smalldoubling.harness import certify_elementary

from test_core import cyclic_sets, pairs


def S(text):
    return CyclicSet.parse(text)


def test_vsds():
    v = addcomb.is_vsds(S("12:0,3,6,9"))
    assert v.witness["vsds"] and not v.violation
    v = addcomb.is_vsds(S("12:0,1,5"))
    assert not v.witness["vsds"] and not v.violation
    # dense in a coset of order 4: 3 of 4 points
    v = addcomb.is_vsds(S("12:1,4,7"))
    assert v.witness["vsds"] and v.conclusion_holds


@settings(max_examples=300)
@given(pairs(n_max=30))
def test_kneser_olson_consol_random(pair):
    A, B = pair
    for check in (addcomb.kneser_verdict, addcomb.olson_verdict, addcomb.consol_verdict):
        assert not check(A, B).violation


def test_kneser_examples():
    v = addcomb.kneser_verdict(S("12:0,3,6,9"), S("12:0,3"))
    assert v.hypothesis_holds and v.conclusion_holds
    v = addcomb.kneser_verdict(S("7:0,1"), S("7:0,1"))
    assert v.hypothesis_holds and v.witness["stabilizer_order"] == 1


def test_coset_bounds_examples():
    Z4 = Subgroup(4, 4)
    v = addcomb.coset_sum_bounds(S("4:0,1,2"), S("4:0,1"), Z4)
    assert v.hypothesis_holds and v.conclusion_holds and v.witness["sumset_size"] == 4
    v = addcomb.coset_sum_bounds(S("4:0,1"), S("4:0,1,3"), Z4)
    assert v.witness["part_i"] and not v.witness["part_ii"] and v.conclusion_holds
    v = addcomb.coset_sum_bounds(S("12:0,1"), S("12:0"), Subgroup(12, 12))
    assert not v.hypothesis_holds  # |A| < |K|/2


def test_mantel_examples():
    A = S("100:0,1,2,3")
    assert addcomb.unique_differences(A) == 2
    assert not addcomb.mantel_verdict(A).violation
    assert addcomb.unique_differences(S("8:0,2,4,6")) == 0
    assert not addcomb.mantel_verdict(S("10:0,1")).hypothesis_holds


def test_mantel_statement_fails_as_written():
    # |2A| = 8 <= 3|A| - 4, yet 6 > |A|^2/4 elements have one representation;
    # the graph argument bounds the pairs {x, -x}, giving |A|^2/2
    A = S("10:0,1,2,5")
    assert len(sumset(A, A)) == 8
    assert addcomb.unique_differences(A) == 6
    assert addcomb.mantel_verdict(A).violation
    assert 2 * addcomb.unique_differences(A) <= len(A) ** 2


def test_freiman_3n3():
    v = addcomb.freiman_3n3_verdict([0, 1, 3], 3)
    assert v.hypothesis_holds and v.conclusion_holds and v.witness["doubling"] == 6
    assert not addcomb.freiman_3n3_verdict([0, 1, 2], 3).hypothesis_holds
    assert addcomb.freiman_3n3_verdict([0, 1, 3], 4).conclusion_holds
    with pytest.raises(ValueError):
        addcomb.freiman_3n3_verdict([2**31], 3)


@settings(max_examples=300)
@given(st.sets(st.integers(-40, 40), min_size=1, max_size=8), st.integers(1, 30))
def test_freiman_3n3_random(xs, l):
    assert not addcomb.freiman_3n3_verdict(sorted(xs), l).violation


def test_triple_examples():
    assert addcomb.classify_triple(S("12:0,4,8")) == ("i", 3)
    assert addcomb.classify_triple(S("4:0,1,2")) == ("ii", 4)
    assert addcomb.classify_triple(S("12:0,1,6")) == ("iii", 5)
    assert addcomb.classify_triple(S("100:0,1,5")) == ("iv", 6)
    with pytest.raises(ValueError):
        addcomb.classify_triple(S("12:0,1"))


def test_triple_exhaustive_small():
    for n in range(3, 16):
        for els in combinations(range(n), 3):
            A = CyclicSet(n, els)
            assert addcomb.classify_triple(A)[1] == len(sumset(A, A))


def test_alpha_examples():
    assert not addcomb.alpha_verdict(S("12:0,1,2"), 5).hypothesis_holds
    hits = [b for b in range(12) if addcomb.alpha_verdict(S("12:0,1,5"), b).hypothesis_holds]
    assert all(not addcomb.alpha_verdict(S("12:0,1,5"), b).violation for b in hits)
    # four-term progression branch: a2 = 0, a1 = 1, beta = 2, a3 = 3
    v = addcomb.alpha_verdict((1, 0, 3), 2, 100)
    assert v.hypothesis_holds and v.witness["four_term_ap"]
    # coset branch: a2 - a1 of order 3
    v = addcomb.alpha_verdict((0, 4, 1), 8, 12)
    assert v.hypothesis_holds and v.witness["coset"]


def test_alpha_statement_fails_as_written():
    # integers 0, 2, -1 with beta = -2 = 2*a3 - a1 = 2*a1 - a2; no wraparound in Z_1000
    v = addcomb.alpha_verdict((0, 2, -1), -2, 1000)
    assert v.hypothesis_holds and v.violation


def test_elementary_types():
    et = addcomb.elementary_type(S("7:0"), S("7:1,2,3"))
    assert et.tag == "I"
    et = addcomb.elementary_type(S("7:0,1"), S("7:0,1"))
    assert et.tag == "II" and et.diff == 1
    for A, B in [(S("7:0"), S("7:1,2,3")), (S("7:0,1"), S("7:0,1"))]:
        assert certify_elementary(A, B, addcomb.elementary_type(A, B))


def test_elementary_iii_and_iv_certified():
    found = set()
    for n in range(2, 9):
        sets = [CyclicSet(n, els) for k in range(2, n) for els in combinations(range(n), k)]
        for A in sets:
            for B in sets:
                et = addcomb.elementary_type(A, B)
                if et.tag in ("III", "IV"):
                    found.add(et.tag)
                    assert certify_elementary(A, B, et)
    assert found == {"III", "IV"}


def test_kemperman_examples():
    v = addcomb.kemperman_verdict(S("7:0,1"), S("7:0,1"))
    assert v.hypothesis_holds and v.conclusion_holds and v.witness["subgroup_order"] == 1
    v = addcomb.kemperman_verdict(S("6:0,2,4"), S("6:0,2,4"))
    assert v.conclusion_holds and v.witness["type"].tag == "I"
    assert not addcomb.kemperman_verdict(S("1:0"), S("1:0")).hypothesis_holds


def test_kemp_lemma_runs():
    assert addcomb.generates(S("12:0,1,5"))
    assert not addcomb.generates(S("12:0,4"))
    v = addcomb.kemp_lemma_verdict(S("12:0,1"), S("12:0,1,5"))
    assert not v.violation
