"""Character sums over Z_n and the bias machinery built on them."""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .arith import totient_table
from .core import DENSE_LIMIT, ApCover, CyclicSet, Subgroup, sumset
from .verdict import LemmaVerdict

PHI_CUTOFF = 36
PHI_EPS = Fraction(4, 2025)


@dataclass(frozen=True)
class FourierProfile:
    """hat A(k) = sum_{a in A} e(ka/n) for k = 0..n-1."""

    modulus: int
    size: int
    coefficients: np.ndarray

    def kernel_order(self, k: int) -> int:
        return gcd(k, self.modulus)

    def index(self, k: int) -> int:
        """Index of the kernel of the k-th character."""
        return self.modulus // gcd(k, self.modulus)

    def parseval_error(self) -> float:
        total = float(np.sum(np.abs(self.coefficients) ** 2)) / self.modulus
        return abs(total - self.size)


def dft(A: CyclicSet, max_modulus: int = DENSE_LIMIT) -> FourierProfile:
    """Direct O(n |A|) evaluation; phases are reduced mod n in integers first."""
    n = A.modulus
    if n > max_modulus:
        raise ValueError(f"modulus {n} exceeds the dense DFT bound {max_modulus}")
    ks = np.arange(n, dtype=np.int64)
    els = np.array(A.elements, dtype=np.int64)
    if not len(els):
        return FourierProfile(n, 0, np.zeros(n, dtype=complex))
    phase = (ks[:, None] * els[None, :]) % n
    coeffs = np.exp(2j * np.pi * phase / n).sum(axis=1)
    coeffs[0] = len(els)
    return FourierProfile(n, len(els), coeffs)


# ---------------------------------------------------------------------------
# energy and shared differences

def energy(B: CyclicSet) -> int:
    """Number of quadruples (b1, b2, b3, b4) in B^4 with b1 + b2 = b3 + b4."""
    n = B.modulus
    reps = Counter((x + y) % n for x in B.elements for y in B.elements)
    return sum(c * c for c in reps.values())


def fourier_energy(B: CyclicSet) -> float:
    prof = dft(B)
    return float(np.sum(np.abs(prof.coefficients) ** 4)) / B.modulus


def energy_verdict(B: CyclicSet, rel_tol: float = 1e-4) -> LemmaVerdict:
    """Cauchy-Schwarz bound E(B) >= |B|^4/|2B| and the Fourier fourth-moment identity."""
    if not B.elements:
        raise ValueError("empty set")
    e = energy(B)
    two_b = len(sumset(B, B))
    fe = fourier_energy(B)
    checks = {
        "cauchy_schwarz": e * two_b >= len(B) ** 4,
        "fourier": abs(fe - e) <= rel_tol * e,
    }
    ok = all(checks.values())
    return LemmaVerdict("energy", True, ok, {"energy": e, "fourier_energy": fe, "doubling": two_b},
                        "" if ok else f"failed: {[k for k, v in checks.items() if not v]}")


def shared_diff(B: CyclicSet, x: int) -> CyclicSet:
    """B intersected with B + x; its size counts representations x = b - b'."""
    n = B.modulus
    shifted = {(b + x) % n for b in B.elements}
    return CyclicSet(n, tuple(b for b in B.elements if b in shifted))


def katz_koester_verdict(B: CyclicSet) -> LemmaVerdict:
    """B^(x) + B sits inside (2B)^(x) for every x, and the |B^(x)| add up to |B|^2."""
    n = B.modulus
    if not B.elements:
        return LemmaVerdict("katz_koester", False, True)
    two_b = sumset(B, B)
    total = 0
    for x in range(n):
        bx = shared_diff(B, x)
        total += len(bx)
        if not bx.elements:
            continue
        lhs = sumset(bx, B)
        rhs = shared_diff(two_b, x)
        if not lhs.element_set <= rhs.element_set:
            return LemmaVerdict("katz_koester", True, False, {"x": x}, "containment fails")
    ok = total == len(B) ** 2
    return LemmaVerdict("katz_koester", True, ok, {"sum_of_counts": total})


# ---------------------------------------------------------------------------
# points on the unit circle

@dataclass(frozen=True)
class ArcResult:
    center: float
    members: tuple[int, ...]
    eta: float
    bound: float

    @property
    def meets_bound(self) -> bool:
        return len(self.members) >= self.bound - 1e-9


def arc_concentrate(points: Sequence[complex], tol: float = 1e-9) -> ArcResult:
    """Open half-circle holding the most points; it holds at least (1 + eta)|Z|/2 of them.

    ``members`` are indices into ``points``; ``center`` is the arc's middle angle.
    """
    if not len(points):
        raise ValueError("no points")
    z = np.asarray(points, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1.0) > tol):
        raise ValueError("all points must lie on the unit circle")
    k = len(z)
    eta = float(abs(z.sum())) / k
    theta = np.mod(np.angle(z), 2 * math.pi)
    best = None
    for i in range(k):
        rel = np.mod(theta - theta[i], 2 * math.pi)
        rel[rel > 2 * math.pi - tol] = 0.0
        inside = rel < math.pi - tol
        count = int(inside.sum())
        if best is None or count > best[0]:
            best = (count, i, rel, inside)
    count, i, rel, inside = best
    # open the window just before theta[i]: half the gap back to the previous point
    outside = rel[~inside]
    back_gap = 2 * math.pi - float(outside.max()) if len(outside) else math.pi
    front_gap = float(outside.min()) - float(rel[inside].max()) if len(outside) else math.pi
    nudge = 0.5 * min(back_gap, front_gap, math.pi - float(rel[inside].max()))
    center = float(np.mod(theta[i] - nudge + math.pi / 2, 2 * math.pi))
    members = tuple(int(j) for j in np.nonzero(inside)[0])
    return ArcResult(center, members, eta, 0.5 * (1 + eta) * k)


# ---------------------------------------------------------------------------
# the divisor-bounded totient sum

_PHI_SMALL = totient_table(PHI_CUTOFF)


def phi36(n: int, cutoff: int = PHI_CUTOFF) -> Fraction:
    """(1/n) * sum of phi(d) over divisors d <= cutoff of n, exactly."""
    if n < 1:
        raise ValueError("n must be positive")
    table = _PHI_SMALL if cutoff <= PHI_CUTOFF else totient_table(cutoff)
    return Fraction(sum(table[d] for d in range(1, cutoff + 1) if n % d == 0), n)


def _divisor_phi_sums(lo: int, hi: int, cutoff: int) -> np.ndarray:
    """sum_{d | n, d <= cutoff} phi(d) for n in (lo, hi]."""
    table = totient_table(cutoff)
    ns = np.arange(lo + 1, hi + 1, dtype=np.int64)
    sums = np.zeros(len(ns), dtype=np.int64)
    for d in range(1, cutoff + 1):
        first = (-(lo + 1)) % d
        sums[first::d] += table[d]
    return sums


@dataclass
class PhiScanReport:
    lo: int
    hi: int
    eps: Fraction
    checked: int
    violations: list[int]
    max_value: Fraction
    argmax: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "eps": [self.eps.numerator, self.eps.denominator],
            "checked": self.checked,
            "violations": self.violations,
            "max_value": [self.max_value.numerator, self.max_value.denominator],
            "argmax": self.argmax,
        }


def phi_scan(lo: int, hi: int, eps: Fraction = PHI_EPS, cutoff: int = PHI_CUTOFF) -> PhiScanReport:
    """Check Phi(n) < eps for every n with lo < n <= hi (integer comparisons only)."""
    eps = Fraction(eps)
    if hi <= lo:
        return PhiScanReport(lo, hi, eps, 0, [], Fraction(0), lo)
    sums = _divisor_phi_sums(lo, hi, cutoff)
    ns = np.arange(lo + 1, hi + 1, dtype=np.int64)
    bad = eps.denominator * sums >= eps.numerator * ns
    violations = [int(v) for v in ns[bad]]
    # exact argmax of sums/n via cross-multiplication
    best = 0
    for i in range(1, len(ns)):
        if sums[i] * ns[best] > sums[best] * ns[i]:
            best = i
    return PhiScanReport(lo, hi, eps, len(ns), violations,
                         Fraction(int(sums[best]), int(ns[best])), int(ns[best]))


def phi_rows(lo: int, hi: int, eps: Fraction = PHI_EPS, cutoff: int = PHI_CUTOFF) -> Iterator[tuple[int, int, int, bool]]:
    """Yield (n, numerator, denominator, ok) for lo < n <= hi."""
    eps = Fraction(eps)
    step = 65536
    for block in range(lo, hi, step):
        top = min(hi, block + step)
        sums = _divisor_phi_sums(block, top, cutoff)
        for offset, s in enumerate(sums):
            n = block + 1 + offset
            f = Fraction(int(s), n)
            yield n, f.numerator, f.denominator, f < eps


# ---------------------------------------------------------------------------
# bias detection

@dataclass(frozen=True)
class BiasWitness:
    character: int
    coefficient: float
    subgroup: Subgroup
    index: int
    progression: ApCover
    covered: CyclicSet
    coverage: Fraction

    def check(self, A: CyclicSet, coverage: float) -> bool:
        """Re-derive every property the witness claims."""
        m = self.subgroup.step
        P = self.progression
        covered = CyclicSet(A.modulus, tuple(a for a in A.elements if any((a - t) % m == 0 for t in P.terms())))
        return (
            P.primitive
            and 2 * P.length <= self.index + 1
            and self.index == self.subgroup.index
            and covered == self.covered
            and Fraction(len(covered), len(A)) == self.coverage
            and self.coverage > _exact(coverage)
        )

    def to_dict(self) -> dict:
        return {
            "character": self.character,
            "coefficient": self.coefficient,
            "subgroup_order": self.subgroup.order,
            "index": self.index,
            "progression": {"start": self.progression.start, "diff": self.progression.diff,
                            "length": self.progression.length},
            "covered_size": len(self.covered),
            "coverage": [self.coverage.numerator, self.coverage.denominator],
        }


def _exact(x: float | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def _lift_generator(dq: int, m: int, n: int) -> int:
    d = dq
    while gcd(d, n) != 1:
        d += m
    return d % n


def bias_detect(A: CyclicSet, min_index: int = 37, coeff: float = 0.8, coverage: float = 0.9) -> BiasWitness | None:
    """Look for a large nonprincipal coefficient and turn it into a progression covering most of A.

    Candidates are characters whose kernel has index >= ``min_index`` and
    |hat A(k)| > coeff |A|, tried by decreasing modulus.  Returns None if no
    candidate yields coverage above ``coverage``; None does not certify that
    A is unbiased.
    """
    if not A.elements:
        return None
    n = A.modulus
    prof = dft(A)
    mags = np.abs(prof.coefficients)
    cands = [k for k in range(1, n) if n // gcd(k, n) >= min_index and mags[k] > coeff * len(A)]
    cands.sort(key=lambda k: (-round(float(mags[k]), 9), k))
    for k in cands:
        g = gcd(k, n)
        m = n // g
        kq = k // g
        H = Subgroup(n, g)
        exps = [(kq * a) % m for a in A.elements]
        pts = [cmath.exp(2j * math.pi * e / m) for e in exps]
        arc = arc_concentrate(pts)
        member_exps = sorted({exps[i] for i in arc.members})
        # shortest cyclic window of exponents holding every member
        if len(member_exps) == 1:
            j0, length = member_exps[0], 1
        else:
            gaps = [(member_exps[(i + 1) % len(member_exps)] - member_exps[i]) % m for i in range(len(member_exps))]
            i_max = max(range(len(gaps)), key=lambda i: (gaps[i], -i))
            j0 = member_exps[(i_max + 1) % len(member_exps)]
            length = m - gaps[i_max] + 1
        inv = pow(kq, -1, m) if m > 1 else 0
        start_q = (j0 * inv) % m
        d = _lift_generator(inv % m if m > 1 else 1, m, n)
        P = ApCover(n, start_q, d, length)
        q_set = {(start_q + i * inv) % m for i in range(length)} if m > 1 else {0}
        covered = CyclicSet(n, tuple(a for a in A.elements if a % m in q_set))
        ratio = Fraction(len(covered), len(A))
        if ratio > _exact(coverage) and 2 * length <= m + 1:
            return BiasWitness(k, float(mags[k]), H, m, P, covered, ratio)
    return None
