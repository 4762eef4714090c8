"""Exact checkers for the classical sumset lemmas used in the small-doubling theory.

Each checker evaluates hypothesis and conclusion on concrete sets and returns
a :class:`LemmaVerdict`.  Integer arithmetic only: fractional thresholds are
cleared by multiplying through.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Sequence

from .core import (
    CyclicSet,
    ModulusMismatch,
    Subgroup,
    ap_differences,
    coset_split,
    cosets_met,
    difference_set,
    in_one_coset,
    is_ap,
    quotient_image,
    stabilizer,
    subgroups,
    sumset,
)
from .arith import element_order
from .verdict import LemmaVerdict


def _require_nonempty(*sets: CyclicSet):
    for S in sets:
        if not S.elements:
            raise ValueError("empty set")


def _same_modulus(A: CyclicSet, B: CyclicSet):
    if A.modulus != B.modulus:
        raise ModulusMismatch(f"moduli differ: {A.modulus} vs {B.modulus}")


def generated_subgroup(A: CyclicSet) -> Subgroup:
    """Smallest subgroup H such that A lies in a single H-coset."""
    n = A.modulus
    g = n
    a0 = A.elements[0]
    for a in A.elements[1:]:
        g = gcd(g, a - a0)
    return Subgroup(n, n // g)


def is_coset(S: CyclicSet) -> bool:
    return bool(S.elements) and len(S) == generated_subgroup(S).order


def representation_counts(A: CyclicSet, B: CyclicSet) -> Counter:
    """r(x) = #{(a, b) in A x B : a + b = x}."""
    n = A.modulus
    return Counter((a + b) % n for a in A.elements for b in B.elements)


# ---------------------------------------------------------------------------
# very small doubling

def is_vsds(A: CyclicSet) -> LemmaVerdict:
    """Test |2A| < 3|A|/2 and the coset characterisation of such sets.

    The characterisation is an equivalence, so the hypothesis is always on;
    ``witness['vsds']`` carries the actual answer.
    """
    _require_nonempty(A)
    two_a = sumset(A, A)
    vsds = 2 * len(two_a) < 3 * len(A)
    H0 = generated_subgroup(A)
    dense_coset = 3 * len(A) > 2 * H0.order
    checks = {"equivalence": vsds == dense_coset}
    witness = {"vsds": vsds, "doubling": len(two_a), "size": len(A)}
    if vsds:
        diff = difference_set(A)
        diff_is_subgroup = diff == H0.as_set()
        checks["difference_set_is_subgroup"] = diff_is_subgroup
        checks["dense_in_coset"] = dense_coset
        checks["sumset_is_coset"] = len(two_a) == H0.order and in_one_coset(two_a, H0)
        witness["subgroup"] = H0
    ok = all(checks.values())
    return LemmaVerdict("vsds", True, ok, witness, _failed(checks))


def _failed(checks: dict[str, bool]) -> str:
    bad = [k for k, v in checks.items() if not v]
    return "failed: " + ", ".join(bad) if bad else ""


# ---------------------------------------------------------------------------
# Kneser / Olson / consolidation

def kneser_verdict(A: CyclicSet, B: CyclicSet) -> LemmaVerdict:
    """Kneser's bound, its equality form below |A|+|B|-1, and the periodicity corollary."""
    _same_modulus(A, B)
    _require_nonempty(A, B)
    S = sumset(A, B)
    H = stabilizer(S)
    h = H.order
    s, a, b = len(S), len(A), len(B)
    checks = {"lower_bound": s >= a + b - h}
    critical = s <= a + b - 1
    if critical:
        aH = cosets_met(A, H) * h
        bH = cosets_met(B, H) * h
        checks["equality"] = s == aH + bH - h
    if s < a + b - 1:
        checks["periodic"] = h > 1
    witness = {"sumset_size": s, "stabilizer_order": h}
    return LemmaVerdict("kneser", critical, all(checks.values()), witness, _failed(checks))


def olson_verdict(A: CyclicSet, B: CyclicSet) -> LemmaVerdict:
    """Either |A+B| >= |A| + |B|/2 or B sits in one coset of the period of A+B."""
    _same_modulus(A, B)
    _require_nonempty(A, B)
    S = sumset(A, B)
    small = 2 * len(S) < 2 * len(A) + len(B)
    H = stabilizer(S)
    ok = in_one_coset(B, H) if small else True
    witness = {"sumset_size": len(S), "stabilizer_order": H.order}
    return LemmaVerdict("olson", small, ok, witness, "" if ok else "B meets several period cosets")


def consol_verdict(A: CyclicSet, B: CyclicSet) -> LemmaVerdict:
    """Consolidation lemma plus the two corollaries that ride on it.

    Sub-checks: ``consol`` (|A+B| < 2 min(|B|, 3|A|/4)), ``olson_cor``
    (|A+B| < |A| + |B|/2 with |A| <= |B|) and ``not_vsds`` (A not a VSDS
    forces |A+B| >= 2 min(|B|, 3|A|/4)).
    """
    _same_modulus(A, B)
    _require_nonempty(A, B)
    S = sumset(A, B)
    s, a, b = len(S), len(A), len(B)
    H = stabilizer(S)
    h = H.order
    hyps: dict[str, bool] = {}
    checks: dict[str, bool] = {}

    hyps["consol"] = s < 2 * b and 2 * s < 3 * a
    if hyps["consol"]:
        checks["consol"] = (
            3 * a > 2 * h
            and 2 * b > h
            and in_one_coset(A, H)
            and in_one_coset(B, H)
            and s == h
            and in_one_coset(S, H)
        )

    hyps["olson_cor"] = 2 * s < 2 * a + b and a <= b
    if hyps["olson_cor"]:
        two_b = sumset(B, B)
        checks["olson_cor"] = (
            3 * b > 2 * h
            and difference_set(B) == H.as_set()
            and len(two_b) == h
            and in_one_coset(two_b, H)
            and 2 * len(two_b) < 3 * b
        )

    a_vsds = 2 * len(sumset(A, A)) < 3 * a
    hyps["not_vsds"] = not a_vsds
    if hyps["not_vsds"]:
        checks["not_vsds"] = s >= 2 * b or 2 * s >= 3 * a

    witness = {"sumset_size": s, "stabilizer_order": h, "hypotheses": hyps}
    return LemmaVerdict("consol", any(hyps.values()), all(checks.values()), witness, _failed(checks))


def coset_sum_bounds(A: CyclicSet, B: CyclicSet, K: Subgroup) -> LemmaVerdict:
    """Sizes of A + B when A is at least half of a K-coset."""
    _same_modulus(A, B)
    pre = bool(A.elements) and bool(B.elements) and in_one_coset(A, K) and 2 * len(A) >= K.order
    if not pre:
        return LemmaVerdict("coset_bounds", False, True, {}, "precondition fails")
    a, b, k = len(A), len(B), K.order
    s = len(sumset(A, B))
    hyp_i = b > k - a
    hyp_ii = b > 2 * (k - a)
    checks = {}
    if hyp_i:
        checks["part_i"] = s >= k
    if hyp_ii:
        checks["part_ii"] = in_one_coset(B, K) or s >= a + k
    witness = {"sumset_size": s, "subgroup_order": k, "part_i": hyp_i, "part_ii": hyp_ii}
    return LemmaVerdict("coset_bounds", hyp_i or hyp_ii, all(checks.values()), witness, _failed(checks))


# ---------------------------------------------------------------------------
# unique differences, the 3n-3 theorem

def unique_differences(A: CyclicSet) -> int:
    """Number of x with exactly one representation x = a - b, a, b in A."""
    n = A.modulus
    reps = Counter((a - b) % n for a in A.elements for b in A.elements)
    return sum(1 for c in reps.values() if c == 1)


def mantel_verdict(A: CyclicSet) -> LemmaVerdict:
    _require_nonempty(A)
    a = len(A)
    two_a = len(sumset(A, A))
    hyp = two_a <= 3 * a - 4
    count = unique_differences(A)
    ok = 4 * count <= a * a
    return LemmaVerdict("mantel", hyp, ok, {"unique_differences": count, "doubling": two_a})


INT_BOUND = 2**30


def integer_ap_span(A: Sequence[int]) -> int:
    """Fewest terms of an integer progression containing A (1 for a singleton)."""
    xs = sorted(set(A))
    if len(xs) == 1:
        return 1
    lo = xs[0]
    g = 0
    for x in xs:
        g = gcd(g, x - lo)
    # any admissible difference divides g; the longest admissible one gives the fewest terms
    return (xs[-1] - lo) // g + 1


def freiman_3n3_verdict(A: Sequence[int], l: int) -> LemmaVerdict:
    """Freiman's 3n-3 theorem over the integers: if A is in no l-term AP then |2A| >= min(l, 2|A|-3) + |A|."""
    xs = sorted(set(A))
    if not xs:
        raise ValueError("empty set")
    if l < 1:
        raise ValueError("l must be at least 1")
    if any(abs(x) > INT_BOUND for x in xs):
        raise ValueError(f"integers must have magnitude at most {INT_BOUND}")
    span = integer_ap_span(xs)
    hyp = span > l
    two_a = len({x + y for x in xs for y in xs})
    ok = two_a >= min(l, 2 * len(xs) - 3) + len(xs)
    return LemmaVerdict("3n-3", hyp, ok, {"ap_terms_needed": span, "doubling": two_a})


# ---------------------------------------------------------------------------
# three-element sets

def classify_triple(A: CyclicSet) -> tuple[str, int]:
    """Return the case tag ('i'..'iv') and the |2A| it forces for a 3-subset of Z_n."""
    if len(A) != 3:
        raise ValueError(f"need exactly 3 elements, got {len(A)}")
    n = A.modulus
    if n % 3 == 0 and A == Subgroup(n, 3).coset(A.elements[0]):
        return "i", 3
    ap = is_ap(A)
    if ap is not None:
        return "ii", 4 if element_order(ap[0], n) == 4 else 5
    if n % 2 == 0:
        inv = n // 2
        els = A.elements
        for a in els:
            if (a + inv) % n in A:
                (b,) = [x for x in els if x != a and x != (a + inv) % n]
                if (2 * b - 2 * a - inv) % n != 0:
                    return "iii", 5
    return "iv", 6


def alpha_verdict(alphas: Sequence[int] | CyclicSet, beta: int, n: int | None = None) -> LemmaVerdict:
    """Three labelled elements a1, a2, a3 and beta = ai + aj - a1 = ak + al - a2.

    ``alphas`` is taken in the given order; a CyclicSet is read in ascending
    order.  The conclusion: A + {beta} is a 4-term progression, or
    {a1, a2, beta} is a coset of the order-3 subgroup.
    """
    if isinstance(alphas, CyclicSet):
        n = alphas.modulus
        alphas = alphas.elements
    if n is None:
        raise ValueError("modulus required")
    al = [x % n for x in alphas]
    beta %= n
    if len(al) != 3:
        raise ValueError("need exactly three alphas")
    pair_sums = [(al[i] + al[j]) % n for i in range(3) for j in range(i, 3)]
    if len(set(pair_sums)) != 6 or beta in al:
        return LemmaVerdict("alpha", False, True, {}, "precondition fails")
    left = {(al[i] + al[j] - al[0]) % n: (i, j) for i, j in product(range(3), repeat=2)}
    right = {(al[k] + al[l] - al[1]) % n: (k, l) for k, l in product(range(3), repeat=2)}
    if beta not in left or beta not in right:
        return LemmaVerdict("alpha", False, True, {}, "no index choice reaches beta")
    four = CyclicSet.of(n, al + [beta])
    is_four_ap = is_ap(four) is not None
    triple = CyclicSet.of(n, [al[0], al[1], beta])
    is_3coset = len(triple) == 3 and n % 3 == 0 and triple == Subgroup(n, 3).coset(al[0])
    witness = {"left": left[beta], "right": right[beta], "four_term_ap": is_four_ap, "coset": is_3coset}
    return LemmaVerdict("alpha", True, is_four_ap or is_3coset, witness)


# ---------------------------------------------------------------------------
# elementary pairs and Kemperman

@dataclass(frozen=True)
class ElementaryType:
    """Which kind of elementary pair (A, B) is, with the data that certifies it."""

    tag: str  # I, II, III, IV or NONE
    singleton_side: str | None = None
    diff: int | None = None
    subgroup_order: int | None = None
    part1: tuple[int, ...] | None = None
    part2: tuple[int, ...] | None = None
    g1: int | None = None
    g2: int | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _type_iii(A: CyclicSet, B: CyclicSet) -> ElementaryType | None:
    n = A.modulus
    h = len(A) + len(B) - 1
    if n % h:
        return None
    H = Subgroup(n, h)
    reps = representation_counts(A, B)
    unique = [x for x, c in reps.items() if c == 1]
    for g1 in A.elements:
        H1 = {(a - g1) % n for a in A.elements} - {0}
        if not H1 or any(x not in H for x in H1):
            continue
        for g2 in B.elements:
            H2 = {(g2 - b) % n for b in B.elements} - {0}
            if not H2 or any(x not in H for x in H2) or H1 & H2:
                continue
            if len(H1) + len(H2) != h - 1:
                continue
            c = (g1 + g2) % n
            if unique == [c]:
                return ElementaryType("III", subgroup_order=h, part1=tuple(sorted(H1)),
                                      part2=tuple(sorted(H2)), g1=g1, g2=g2)
    return None


def _type_iv(A: CyclicSet, B: CyclicSet) -> ElementaryType | None:
    n = A.modulus
    h = len(A) + len(B)
    if n % h:
        return None
    H = Subgroup(n, h)
    if not (in_one_coset(A, H) and in_one_coset(B, H)):
        return None
    if stabilizer(A).order != 1 or stabilizer(B).order != 1:
        return None
    if min(representation_counts(A, B).values()) < 2:
        return None
    g1 = A.elements[0]
    a_set = A.element_set
    base = (A.elements[0] + B.elements[0]) % n
    for t in range(0, n, H.step):
        c = (base + t) % n
        if all((c - b) % n not in a_set for b in B.elements):
            g2 = (c - g1) % n
            H1 = tuple(sorted((a - g1) % n for a in A.elements))
            H2 = tuple(sorted((g2 - b) % n for b in B.elements))
            return ElementaryType("IV", subgroup_order=h, part1=H1, part2=H2, g1=g1, g2=g2)
    return None


def elementary_type(A: CyclicSet, B: CyclicSet) -> ElementaryType:
    """First of the four elementary-pair shapes (in order I, II, III, IV) that (A, B) has."""
    _same_modulus(A, B)
    _require_nonempty(A, B)
    if len(A) == 1 or len(B) == 1:
        return ElementaryType("I", singleton_side="A" if len(A) == 1 else "B")
    need = len(A) + len(B) - 1
    common = set(ap_differences(A)) & set(ap_differences(B))
    good = sorted(d for d in common if element_order(d, A.modulus) >= need)
    if good:
        return ElementaryType("II", diff=good[0])
    return _type_iii(A, B) or _type_iv(A, B) or ElementaryType("NONE")


def _unique_rep_exists(A: CyclicSet, B: CyclicSet) -> bool:
    return 1 in representation_counts(A, B).values()


def kemperman_verdict(A: CyclicSet, B: CyclicSet) -> LemmaVerdict:
    """Search the proper subgroups for one that makes (A, B) elementary in the quotient."""
    _same_modulus(A, B)
    _require_nonempty(A, B)
    n = A.modulus
    S = sumset(A, B)
    if n == 1:
        # the trivial group has no proper subgroup to offer
        return LemmaVerdict("kemperman", False, True, {}, "trivial group")
    hyp = len(S) <= len(A) + len(B) - 1 and (len(S) < n or _unique_rep_exists(A, B))
    if not hyp:
        return LemmaVerdict("kemperman", False, True)
    for H in subgroups(n):
        if not H.proper:
            continue
        h = H.order
        if any(cosets_met(C, H) * h - len(C) > h - 1 for C in (A, B, S)):
            continue
        et = elementary_type(quotient_image(A, H).image, quotient_image(B, H).image)
        if et.tag != "NONE":
            return LemmaVerdict("kemperman", True, True, {"subgroup_order": h, "type": et})
    return LemmaVerdict("kemperman", True, False, {}, "no proper subgroup gives an elementary quotient pair")


def generates(B: CyclicSet) -> bool:
    """True iff B is not inside a proper coset."""
    return generated_subgroup(B).order == B.modulus


def kemp_lemma_verdict(A: CyclicSet, B: CyclicSet, max_rect_size: int | None = None) -> LemmaVerdict:
    """Rectifiable, non-progression, generating B in a critical pair splits evenly over two cosets."""
    from .rectify import is_rectifiable

    _same_modulus(A, B)
    _require_nonempty(A, B)
    n = A.modulus
    a, b = len(A), len(B)
    hyp = (
        len(sumset(A, B)) <= a + b - 1
        and a + b <= n - 1
        and min(a, b) >= 2
        and generates(B)
        and is_ap(B) is None
    )
    if hyp:
        hyp = is_rectifiable(B, max_size=max_rect_size).rectifiable
    if not hyp:
        return LemmaVerdict("kemp_lemma", False, True)
    for H in subgroups(n):
        h = H.order
        if h == 1 or not H.proper or h % 2 == 0:
            continue
        parts = coset_split(B, H)
        if len(parts) == 2 and all(2 * len(p) == h + 1 for _, p in parts):
            return LemmaVerdict("kemp_lemma", True, True, {"subgroup_order": h})
    return LemmaVerdict("kemp_lemma", True, False, {}, "no subgroup splits B evenly in two")
