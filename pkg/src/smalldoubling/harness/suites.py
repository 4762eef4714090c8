"""Lemma suites: each checks one implication over an exhaustive small domain plus a seeded random one.

Exhaustive pair domains take the first set up to affine maps and the second
up to translation only; every lemma here is invariant under
(A, B) -> (uA + g, uB + h), so this covers all pairs.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass
from typing import Callable

from .. import addcomb, fourier, rectify
from ..arith import element_order
from ..classify import combo_verdict
from ..core import CyclicSet, Subgroup, mask_sumset, quotient_image, stabilizer, subgroups, sumset
from ..verdict import LemmaVerdict
from .canonical import enumerate_canonical, translation_classes
from .report import SweepReport
from .sweep import merge_all, run_shards

CHUNK = 10_000


@dataclass(frozen=True)
class Suite:
    name: str
    exhaustive: Callable[[int, SweepReport], None] | None
    random_case: Callable[[random.Random, int, SweepReport], None] | None
    n_max: int
    trials: int = 0
    random_n_max: int = 0
    n_min: int = 1
    min_hits: int = 1


def _random_set(rng: random.Random, n: int) -> CyclicSet:
    k = rng.randint(1, n)
    return CyclicSet.of(n, rng.sample(range(n), k))


def _log(rep: SweepReport, v: LemmaVerdict, n: int, **sets):
    bad = None
    if v.violation:
        bad = {k: str(s) for k, s in sets.items()}
        bad["verdict"] = v.to_dict()
    rep.record(v.hypothesis_holds, v.conclusion_holds or not v.hypothesis_holds, bad, n=n)


def _pairs(n: int):
    """(A, B) with A an affine-class representative and B a translation-class representative."""
    bs = [CyclicSet.from_mask(n, m) for m in translation_classes(n, bound=64)]
    for cls in enumerate_canonical(n, bound=64):
        for B in bs:
            yield cls.representative, B


def _critical_pairs(n: int):
    for A, B in _pairs(n):
        if bin(mask_sumset(A.mask, B.mask, n)).count("1") <= len(A) + len(B) - 1:
            yield A, B


# --- pair lemmas ------------------------------------------------------------

def _pair_suite(check):
    def exhaustive(n, rep):
        for A, B in _pairs(n):
            _log(rep, check(A, B), n, A=A, B=B)

    def rand(rng, n_max, rep):
        n = rng.randint(1, n_max)
        A, B = _random_set(rng, n), _random_set(rng, n)
        _log(rep, check(A, B), n, A=A, B=B)

    return exhaustive, rand


def _coset_bounds_exhaustive(n, rep):
    bs = [CyclicSet.from_mask(n, m) for m in translation_classes(n, bound=64)]
    for cls in enumerate_canonical(n, bound=64):
        A = cls.representative
        g = addcomb.generated_subgroup(A).order
        for K in subgroups(n):
            if K.order % g or 2 * len(A) < K.order:
                continue
            for B in bs:
                _log(rep, addcomb.coset_sum_bounds(A, B, K), n, A=A, B=B, K=K.order)


# --- single-set lemmas ------------------------------------------------------

def _vsds_exhaustive(n, rep):
    for cls in enumerate_canonical(n, bound=64):
        v = addcomb.is_vsds(cls.representative)
        _log(rep, v, n, A=cls.representative)
        if v.witness["vsds"]:
            rep.bump("vsds_sets")


def _mantel_exhaustive(n, rep):
    for cls in enumerate_canonical(n, 1, 6, bound=64):
        A = cls.representative
        v = addcomb.mantel_verdict(A)
        _log(rep, v, n, A=A)
        # the triangle-free argument bounds pairs {x, -x}, i.e. count <= |A|^2 / 2
        if v.hypothesis_holds and 2 * v.witness["unique_differences"] > len(A) ** 2:
            rep.bump("halved_bound_violations")


def _triple_exhaustive(n, rep):
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                A = CyclicSet(n, (a, b, c))
                tag, predicted = addcomb.classify_triple(A)
                actual = len(sumset(A, A))
                ok = actual == predicted
                rep.record(True, ok, None if ok else {"A": str(A), "tag": tag, "predicted": predicted,
                                                      "actual": actual}, n=n)
                rep.bump(f"case_{tag}")


def _alpha_exhaustive(n, rep):
    for a1 in range(n):
        for a2 in range(n):
            for a3 in range(n):
                if len({a1, a2, a3}) < 3:
                    continue
                for beta in range(n):
                    v = addcomb.alpha_verdict((a1, a2, a3), beta, n)
                    bad = None
                    if v.violation:
                        bad = {"alphas": [a1, a2, a3], "beta": beta, "n": n, "verdict": v.to_dict()}
                        # a2 + 2a3 = 3a1 or a1 + 2a3 = 3a2: the index cases with k = l = 1 / i = j = 2
                        if (a2 + 2 * a3 - 3 * a1) % n == 0 or (a1 + 2 * a3 - 3 * a2) % n == 0:
                            rep.bump("violations_in_a3_doubled_cases")
                    rep.record(v.hypothesis_holds, not v.violation, bad, n=n)


def _rect2a_exhaustive(n, rep):
    for cls in enumerate_canonical(n, 1, 6, bound=64):
        _log(rep, rectify.rect_coset_bound_verdict(cls.representative, max_size=None), n, A=cls.representative)


def _kemp_exhaustive(n, rep):
    for A, B in _critical_pairs(n):
        _log(rep, addcomb.kemperman_verdict(A, B), n, A=A, B=B)


def _kemp_lemma_exhaustive(n, rep):
    for A, B in _critical_pairs(n):
        _log(rep, addcomb.kemp_lemma_verdict(A, B), n, A=A, B=B)


def _progression(S: CyclicSet, d: int) -> bool:
    n = S.modulus
    return any({(s + i * d) % n for i in range(len(S))} == S.element_set for s in S.elements)


def certify_elementary(A: CyclicSet, B: CyclicSet, et: addcomb.ElementaryType) -> bool:
    """Rebuild the elementary-pair certificate from its stored data."""
    n = A.modulus
    if et.tag == "I":
        return len(A if et.singleton_side == "A" else B) == 1
    if et.tag == "II":
        return (element_order(et.diff, n) >= len(A) + len(B) - 1
                and _progression(A, et.diff) and _progression(B, et.diff))
    if et.tag not in ("III", "IV"):
        return False
    H = Subgroup(n, et.subgroup_order)
    H1, H2 = set(et.part1), set(et.part2)
    if not all(x in H for x in H1 | H2) or H1 & H2:
        return False
    if et.tag == "III":
        if et.subgroup_order != len(A) + len(B) - 1 or 0 in H1 | H2 or len(H1 | H2) != H.order - 1:
            return False
        if A.element_set != {(et.g1 + x) % n for x in H1 | {0}}:
            return False
        if B.element_set != {(et.g2 - x) % n for x in H2 | {0}}:
            return False
        c = (et.g1 + et.g2) % n
        return addcomb.representation_counts(A, B)[c] == 1
    if et.subgroup_order != len(A) + len(B) or len(H1 | H2) != H.order:
        return False
    if A.element_set != {(et.g1 + x) % n for x in H1} or B.element_set != {(et.g2 - x) % n for x in H2}:
        return False
    return stabilizer(A).order == 1 and stabilizer(B).order == 1


def _elementary_exhaustive(n, rep):
    for A, B in _critical_pairs(n):
        for H in subgroups(n):
            if not H.proper:
                continue
            qa, qb = quotient_image(A, H).image, quotient_image(B, H).image
            et = addcomb.elementary_type(qa, qb)
            hit = et.tag != "NONE"
            ok = not hit or certify_elementary(qa, qb, et)
            rep.record(hit, ok, None if ok else {"A": str(qa), "B": str(qb), "type": et.to_dict()}, n=n)
            if hit:
                rep.bump(f"type_{et.tag}")


def _combo_exhaustive(n, rep):
    for cls in enumerate_canonical(n, bound=64):
        for L in subgroups(n):
            v = combo_verdict(cls.representative, L, max_rect_size=None)
            _log(rep, v, n, A=cls.representative, L=L.order)


def _kk_exhaustive(n, rep):
    for m in range(1, 1 << n):
        B = CyclicSet.from_mask(n, m)
        _log(rep, fourier.katz_koester_verdict(B), n, B=B)


def _kk_random(rng, n_max, rep):
    n = rng.randint(1, n_max)
    B = _random_set(rng, n)
    _log(rep, fourier.katz_koester_verdict(B), n, B=B)


def _energy_random(rng, n_max, rep):
    n = rng.randint(1, n_max)
    B = _random_set(rng, n)
    v = fourier.energy_verdict(B)
    parseval = fourier.dft(B).parseval_error() <= 1e-6 * len(B)
    if not parseval:
        v = LemmaVerdict("energy", True, False, v.witness, "parseval")
    _log(rep, v, n, B=B)


def _arc_random(rng, n_max, rep):
    k = rng.randint(1, n_max)
    if rng.random() < 0.5:
        pts = [cmath.exp(2j * math.pi * rng.random()) for _ in range(k)]
    else:
        # roots of unity with repeats and antipodes, the awkward cases
        m = rng.randint(1, 12)
        pts = [cmath.exp(2j * math.pi * rng.randrange(m) / m) for _ in range(k)]
    res = fourier.arc_concentrate(pts)
    ok = res.meets_bound
    rep.record(True, ok, None if ok else {"points": [[p.real, p.imag] for p in pts], "eta": res.eta}, n=k)


_kn = _pair_suite(addcomb.kneser_verdict)
_ol = _pair_suite(addcomb.olson_verdict)
_co = _pair_suite(addcomb.consol_verdict)

SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("kneser", _kn[0], _kn[1], 12, 100_000, 40, min_hits=60_000),
    Suite("olson", _ol[0], _ol[1], 12, 100_000, 40, min_hits=25_000),
    Suite("consol", _co[0], _co[1], 12, 100_000, 40, min_hits=80_000),
    Suite("vsds", _vsds_exhaustive, None, 16, min_hits=1_000),
    Suite("mantel", _mantel_exhaustive, None, 16, min_hits=250),
    Suite("triple", _triple_exhaustive, None, 30, n_min=3, min_hits=30_000),
    Suite("alpha", _alpha_exhaustive, None, 15, min_hits=2_000),
    Suite("coset_bounds", _coset_bounds_exhaustive, None, 12, min_hits=20_000),
    Suite("rect2a", _rect2a_exhaustive, None, 14, min_hits=80),
    Suite("kemp", _kemp_exhaustive, None, 14, min_hits=5_000),
    Suite("kemp_lemma", _kemp_lemma_exhaustive, None, 14, min_hits=5),
    Suite("elementary", _elementary_exhaustive, None, 14, min_hits=10_000),
    Suite("combo", _combo_exhaustive, None, 16, min_hits=100),
    Suite("katz_koester", _kk_exhaustive, _kk_random, 12, 1_000, 64, min_hits=8_000),
    Suite("energy", None, _energy_random, 0, 10_000, 128, min_hits=10_000),
    Suite("arc", None, _arc_random, 0, 10_000, 50, min_hits=10_000),
]}


def _exhaustive_shard(suite_id: str, n: int, config: dict) -> SweepReport:
    rep = SweepReport(suite_id, config)
    SUITES[suite_id].exhaustive(n, rep)
    return rep


def _random_shard(suite_id: str, seed: int, chunk: int, count: int, n_max: int, config: dict) -> SweepReport:
    rep = SweepReport(suite_id, config)
    rng = random.Random(f"{seed}:{suite_id}:{chunk}")
    fn = SUITES[suite_id].random_case
    for _ in range(count):
        fn(rng, n_max, rep)
    return rep


def lemma_suite(suite_id: str, n_max: int | None = None, trials: int | None = None, seed: int = 0,
                workers: int = 1, random_n_max: int | None = None) -> SweepReport:
    """Run one suite; the declared minimum hit count applies only to the default domain."""
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; choose from {', '.join(sorted(SUITES))}")
    s = SUITES[suite_id]
    n_max = s.n_max if n_max is None else n_max
    trials = s.trials if trials is None else trials
    random_n_max = s.random_n_max if random_n_max is None else random_n_max
    if s.exhaustive is not None and n_max > 18 and suite_id != "triple":
        raise ValueError(f"n_max = {n_max} exceeds the sweep bound 18")
    default = (n_max, trials, random_n_max) == (s.n_max, s.trials, s.random_n_max)
    config = {"suite": suite_id, "n_max": n_max, "trials": trials if s.random_case else 0,
              "random_n_max": random_n_max if s.random_case else 0, "seed": seed}
    t0 = time.perf_counter()
    reports = [SweepReport(suite_id, config)]
    if s.exhaustive is not None:
        shards = [(suite_id, n, config) for n in range(n_max, s.n_min - 1, -1)]
        reports += run_shards(_exhaustive_shard, shards, workers)
    if s.random_case is not None and trials > 0:
        chunks = [(suite_id, seed, i, min(CHUNK, trials - i * CHUNK), random_n_max, config)
                  for i in range(-(-trials // CHUNK))]
        reports += run_shards(_random_shard, chunks, workers)
    report = merge_all(reports)
    report.min_hits = s.min_hits if default else 1
    report.runtime_ms = (time.perf_counter() - t0) * 1000
    return report
