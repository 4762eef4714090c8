import random
from fractions import Fraction
from math import gcd

import pytest

from smalldoubling.classify import (
    AUX_INCREMENT,
    DENSE,
    NONE,
    REGULAR,
    SINGULAR,
    Constants,
    StructureWitness,
    combo_verdict,
    doubling,
    find_witness,
    verify_witness,
)
from smalldoubling.core import ApCover, CyclicSet, ModulusMismatch, Subgroup, dilate, translate
from smalldoubling.harness import enumerate_canonical


def S(text):
    return CyclicSet.parse(text)


def test_doubling():
    d = doubling(S("12:0,3,6,9"))
    assert (d.size, d.doubling, d.ratio, d.delta) == (4, 4, 1, 0)
    d = doubling(S("12:0,1,5"))
    assert (d.size, d.doubling, d.ratio, d.delta) == (3, 6, 2, 3)
    d = doubling(S("12:0,1"))
    assert (d.size, d.doubling, d.ratio, d.delta) == (2, 3, Fraction(3, 2), 1)
    with pytest.raises(ValueError):
        doubling(CyclicSet(12, ()))


def test_find_witness_examples():
    s = find_witness(S("12:0,3,6,9"))
    assert s.best_variant == DENSE and s.best.subgroup.order == 4
    s = find_witness(S("12:0,1"))
    assert s.best_variant == REGULAR and s.best.subgroup.order == 1 and s.best.progression.length == 2
    s = find_witness(S("12:0,1,5"))
    singular = [w for w in s.witnesses if w.variant == SINGULAR]
    assert any(w.subgroup.order == 1 for w in singular)
    # priority puts regular witnesses first: H of order 3 with P = {0, 1} costs 3 <= 3
    assert s.best_variant == REGULAR and s.best.increment == 3


def test_tightness_example_has_no_witness():
    n = 130000
    s = find_witness(CyclicSet.of(n, [n - 1, 0, 1, 10]))
    assert s.hypothesis_holds is False  # |2A| = 9/4 |A| is not strictly below
    assert s.best_variant == NONE and s.witnesses == []


def test_aux_mode():
    s = find_witness(S("12:0,1,5"), mode="aux")
    assert set(s.hypothesis_detail) == {"not_in_proper_coset", "small_doubling", "sumset_not_full"}
    assert all(w.variant != DENSE for w in s.witnesses)
    assert any(w.variant == AUX_INCREMENT for w in s.witnesses)  # delta * 24000 >= 12
    with pytest.raises(ValueError):
        find_witness(S("12:0"), mode="other")


def test_constants():
    c = Constants.make(C=5)
    assert c.C == 5 and c.C0 == 24000
    assert Constants.make(C=30000, C0=24000) == Constants()
    with pytest.raises(ValueError):
        Constants.make(C=1, C0=1)


def test_verify_rejects_tampering():
    A = S("12:0,1")
    good = find_witness(A).best
    assert verify_witness(A, good)
    short = StructureWitness(REGULAR, 12, good.subgroup, ApCover(12, 0, 1, 1))
    assert not verify_witness(A, short)
    # a singular witness whose three cosets form a progression
    B = S("12:0,1,2")
    fake = StructureWitness(SINGULAR, 12, Subgroup(12, 1), representatives=(0, 1, 2))
    assert not verify_witness(B, fake)
    with pytest.raises(ModulusMismatch):
        verify_witness(S("10:0,1"), good)


def test_witness_variants_constant_on_orbits():
    rng = random.Random(3)
    for n in (9, 12, 14):
        units = [u for u in range(1, n) if gcd(u, n) == 1]
        for cls in enumerate_canonical(n):
            A = cls.representative
            base = find_witness(A)
            for _ in range(2):
                B = dilate(translate(A, rng.randrange(n)), rng.choice(units))
                other = find_witness(B)
                assert other.doubling == base.doubling
                assert sorted(w.variant for w in other.witnesses) == sorted(w.variant for w in base.witnesses)


def test_combo():
    v = combo_verdict(S("12:0,1,2"), Subgroup(12, 1))
    assert v.hypothesis_holds and v.conclusion_holds
    assert v.witness["witness"]["progression"]["length"] == 3
    assert not combo_verdict(S("12:0,4,8"), Subgroup(12, 3)).hypothesis_holds
