"""Subsets, subgroups, quotients and progressions of the cyclic group Z_n.

Sets with modulus up to ``DENSE_LIMIT`` carry a Python-int bitmask (bit e is
set iff e is an element) and use shift/or arithmetic; larger moduli fall back
to plain sorted element tuples.  Every public function accepts either kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator

import numpy as np

from .arith import divisors, element_order, units

DENSE_LIMIT = 4096


class ModulusMismatch(ValueError):
    pass


class SetLiteralError(ValueError):
    """Malformed ``<n>:<e1>,<e2>,...`` literal; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position})")
        self.position = position


# ---------------------------------------------------------------------------
# bitmask primitives (used directly by the sweep harness)

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def mask_elements(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def mask_rotate(m: int, k: int, n: int) -> int:
    """Translate the set encoded by ``m`` by ``k`` in Z_n."""
    k %= n
    if k == 0:
        return m
    full = (1 << n) - 1
    return ((m << k) | (m >> (n - k))) & full


def mask_sumset(a: int, b: int, n: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out |= mask_rotate(b, low.bit_length() - 1, n)
        a ^= low
    return out


def mask_period(m: int, n: int) -> int:
    """Smallest positive period of the set ``m``; the stabilizer has order n // period."""
    for p in divisors(n):
        if mask_rotate(m, p, n) == m:
            return p
    return n


def mask_negate(m: int, n: int) -> int:
    return mask_of((-e) % n for e in mask_elements(m))


# ---------------------------------------------------------------------------
# value types

@dataclass(frozen=True)
class CyclicSet:
    """A finite subset of Z_n.  ``elements`` is sorted and duplicate free."""

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        els = self.elements
        if not isinstance(els, tuple) or any(els[i] >= els[i + 1] for i in range(len(els) - 1)):
            object.__setattr__(self, "elements", tuple(sorted(set(els))))
            if len(self.elements) != len(els):
                raise ValueError("duplicate elements")
        if self.elements and (self.elements[0] < 0 or self.elements[-1] >= self.modulus):
            raise ValueError(f"elements must lie in [0, {self.modulus - 1}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "CyclicSet":
        """Build from arbitrary integers, reducing them modulo n (repeats collapse)."""
        return cls(n, tuple(sorted({int(e) % n for e in elements})))

    @classmethod
    def from_mask(cls, n: int, m: int) -> "CyclicSet":
        s = cls(n, tuple(mask_elements(m)))
        if n <= DENSE_LIMIT:
            s.__dict__["mask"] = m
        return s

    @classmethod
    def full(cls, n: int) -> "CyclicSet":
        return cls(n, tuple(range(n)))

    @classmethod
    def interval(cls, n: int, start: int, length: int) -> "CyclicSet":
        return cls.of(n, range(start, start + length))

    @classmethod
    def parse(cls, text: str) -> "CyclicSet":
        """Parse ``<n>:<e1>,<e2>,...``; elements must be distinct and below n."""
        head, sep, body = text.partition(":")
        if not sep:
            raise SetLiteralError("missing ':' after modulus", len(text))
        if not head.strip().isdigit():
            raise SetLiteralError(f"bad modulus {head!r}", 0)
        n = int(head)
        if n < 1:
            raise SetLiteralError("modulus must be positive", 0)
        seen: set[int] = set()
        col = len(head) + 1
        if body.strip():
            for tok in body.split(","):
                stripped = tok.strip()
                if not stripped.isdigit():
                    raise SetLiteralError(f"bad element {tok!r}", col)
                e = int(stripped)
                if e >= n:
                    raise SetLiteralError(f"element {e} not below modulus {n}", col)
                if e in seen:
                    raise SetLiteralError(f"duplicate element {e}", col)
                seen.add(e)
                col += len(tok) + 1
        return cls(n, tuple(sorted(seen)))

    def __str__(self) -> str:
        return f"{self.modulus}:" + ",".join(map(str, self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, int):
            return False
        return x in self.element_set

    @property
    def dense(self) -> bool:
        return self.modulus <= DENSE_LIMIT

    @cached_property
    def mask(self) -> int:
        if not self.dense:
            raise ValueError(f"no bitmask for modulus {self.modulus} > {DENSE_LIMIT}")
        return mask_of(self.elements)

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)


@dataclass(frozen=True)
class Subgroup:
    """The unique subgroup of Z_n of the given order."""

    modulus: int
    order: int

    def __post_init__(self):
        if self.order < 1 or self.modulus % self.order:
            raise ValueError(f"{self.order} is not a divisor of {self.modulus}")

    @property
    def index(self) -> int:
        return self.modulus // self.order

    @property
    def step(self) -> int:
        """Generator n/h; the subgroup is the set of multiples of it."""
        return self.modulus // self.order

    @property
    def proper(self) -> bool:
        return self.order < self.modulus

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x % self.step == 0

    def as_set(self) -> CyclicSet:
        return CyclicSet(self.modulus, tuple(range(0, self.modulus, self.step)))

    def coset(self, g: int) -> CyclicSet:
        r = g % self.step
        return CyclicSet(self.modulus, tuple(range(r, self.modulus, self.step)))


@dataclass(frozen=True)
class ApCover:
    """The progression start, start+diff, ..., start+(length-1)*diff in Z_n."""

    modulus: int
    start: int
    diff: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("progression length must be at least 1")

    def terms(self) -> list[int]:
        n = self.modulus
        return [(self.start + i * self.diff) % n for i in range(self.length)]

    def as_set(self) -> CyclicSet:
        return CyclicSet.of(self.modulus, self.terms())

    @property
    def primitive(self) -> bool:
        return gcd(self.diff, self.modulus) == 1

    @property
    def distinct_terms(self) -> bool:
        return self.length <= element_order(self.diff, self.modulus)

    def distinct_cosets(self, H: Subgroup) -> bool:
        """True iff all terms lie in pairwise distinct H-cosets."""
        return self.length <= element_order(self.diff % H.step, H.step)

    def covers(self, S: CyclicSet, H: Subgroup | None = None) -> bool:
        """Does P + H (H trivial by default) contain S?"""
        if H is None:
            return S.element_set <= set(self.terms())
        m = H.step
        residues = {t % m for t in self.terms()}
        return all(e % m in residues for e in S)


@dataclass(frozen=True)
class QuotientImage:
    parent_modulus: int
    subgroup_order: int
    image: CyclicSet


# ---------------------------------------------------------------------------
# operations

def _check_same(A: CyclicSet, B: CyclicSet | Subgroup):
    if A.modulus != B.modulus:
        raise ModulusMismatch(f"moduli differ: {A.modulus} vs {B.modulus}")


def sumset(A: CyclicSet, B: CyclicSet) -> CyclicSet:
    """A + B = {a + b mod n}."""
    _check_same(A, B)
    n = A.modulus
    if not A.elements or not B.elements:
        return CyclicSet(n, ())
    if A.dense:
        return CyclicSet.from_mask(n, mask_sumset(A.mask, B.mask, n))
    return CyclicSet.of(n, {a + b for a in A.elements for b in B.elements})


def difference_set(A: CyclicSet, B: CyclicSet | None = None) -> CyclicSet:
    B = A if B is None else B
    _check_same(A, B)
    return CyclicSet.of(A.modulus, {a - b for a in A.elements for b in B.elements})


def stabilizer(S: CyclicSet) -> Subgroup:
    """Largest subgroup H with S + H = S.  The empty set gets the full group."""
    n = S.modulus
    if not S.elements:
        return Subgroup(n, n)
    if S.dense:
        return Subgroup(n, n // mask_period(S.mask, n))
    # a period must map the smallest element onto some element
    els = S.element_set
    for p in divisors(n):
        if p == n:
            break
        if (S.elements[0] + p) % n in els and all((e + p) % n in els for e in S.elements):
            return Subgroup(n, n // p)
    return Subgroup(n, 1)


def translate(A: CyclicSet, g: int) -> CyclicSet:
    n = A.modulus
    if A.dense:
        return CyclicSet.from_mask(n, mask_rotate(A.mask, g, n))
    return CyclicSet.of(n, (a + g for a in A.elements))


def dilate(A: CyclicSet, u: int) -> CyclicSet:
    return CyclicSet.of(A.modulus, (u * a for a in A.elements))


def negate(A: CyclicSet) -> CyclicSet:
    return dilate(A, -1)


def subgroups(n: int) -> list[Subgroup]:
    """All subgroups of Z_n, smallest first."""
    return [Subgroup(n, d) for d in divisors(n)]


def quotient_image(A: CyclicSet, H: Subgroup) -> QuotientImage:
    """phi_H(A), realised in Z_{n/|H|} by reduction modulo the index."""
    _check_same(A, H)
    m = H.step
    return QuotientImage(A.modulus, H.order, CyclicSet.of(m, A.elements))


def cosets_met(A: CyclicSet, H: Subgroup) -> int:
    m = H.step
    return len({a % m for a in A.elements})


def in_one_coset(A: CyclicSet, H: Subgroup) -> bool:
    return cosets_met(A, H) <= 1


def coset_split(A: CyclicSet, H: Subgroup) -> list[tuple[int, CyclicSet]]:
    """Split A by H-cosets; each part is keyed by its smallest element."""
    _check_same(A, H)
    m = H.step
    parts: dict[int, list[int]] = {}
    for a in A.elements:
        parts.setdefault(a % m, []).append(a)
    out = [(els[0], CyclicSet(A.modulus, tuple(els))) for els in parts.values()]
    out.sort()
    return out


def _cover_positions(elems: np.ndarray, s0: int, g: int, n: int, v: np.ndarray) -> np.ndarray:
    order = n // g
    t = ((elems - s0) // g) % order
    return np.sort((t[None, :] * v[:, None]) % order, axis=1)


def _window_lengths(pos: np.ndarray, order: int) -> np.ndarray:
    gaps = np.diff(pos, axis=1)
    wrap = pos[:, 0] + order - pos[:, -1]
    maxgap = np.maximum(gaps.max(axis=1), wrap) if gaps.shape[1] else wrap
    return order - maxgap + 1


def min_ap_cover(S: CyclicSet, H: Subgroup | None = None) -> ApCover | None:
    """Shortest progression (distinct terms) covering S, or of phi_H(S) if H is given.

    Ties go to the smallest difference, then the smallest start.  For every
    difference d only the coset of <d> holding S matters; in index space the
    cover is the complement of the largest cyclic gap.
    """
    if H is not None:
        S = quotient_image(S, H).image
    if not S.elements:
        return None
    n = S.modulus
    s0 = S.elements[0]
    if len(S) == 1:
        return ApCover(n, s0, 0, 1)
    elems = np.array(S.elements, dtype=np.int64)
    offsets = elems - s0
    best_len, best_d = None, None
    for g in divisors(n)[:-1]:
        if np.any(offsets % g):
            continue
        order = n // g
        v = np.array(units(order), dtype=np.int64)
        lengths = _window_lengths(_cover_positions(elems, s0, g, n, v), order)
        lmin = int(lengths.min())
        if best_len is not None and lmin > best_len:
            continue
        d = min(g * pow(int(x), -1, order) % n for x in v[lengths == lmin])
        if best_len is None or lmin < best_len or d < best_d:
            best_len, best_d = lmin, d
    # recover the start for the chosen difference
    g = gcd(best_d, n)
    order = n // g
    inv = pow(best_d // g, -1, order)
    idx = sorted((((e - s0) // g) * inv) % order for e in S.elements)
    starts = []
    k = len(idx)
    for i in range(k):
        nxt = idx[(i + 1) % k] + (order if i == k - 1 else 0)
        if order - (nxt - idx[i]) + 1 == best_len:
            starts.append((s0 + idx[(i + 1) % k] * best_d) % n)
    return ApCover(n, min(starts), best_d, best_len)


def _ap_terms(S: CyclicSet, d: int) -> list[int] | None:
    """Terms of S in progression order if S is a progression with difference d."""
    n = S.modulus
    els = S.element_set
    k = len(S)
    if d % n == 0:
        return None
    first = S.elements[0]
    steps = 0
    while (first - d) % n in els and steps < k:
        first = (first - d) % n
        steps += 1
    if steps >= k:
        # S is closed under -d: it is a progression only if it is a whole coset
        if k != element_order(d, n):
            return None
        first = S.elements[0]
    terms = [first]
    x = (first + d) % n
    while x in els and x != first and len(terms) <= k:
        terms.append(x)
        x = (x + d) % n
    return terms if len(terms) == k else None


def ap_differences(S: CyclicSet) -> list[int]:
    """Every d for which S is a progression with difference d (ascending)."""
    if len(S) < 2:
        return []
    n = S.modulus
    s0 = S.elements[0]
    candidates = {(s - s0) % n for s in S.elements[1:]} | {(s0 - s) % n for s in S.elements[1:]}
    return [d for d in sorted(candidates) if _ap_terms(S, d) is not None]


def is_ap(S: CyclicSet) -> tuple[int, list[int]] | None:
    """If S is a progression with |S| distinct terms, return (difference, terms in order).

    The smallest valid difference is reported.  Sets of size < 2 are not
    progressions.
    """
    diffs = ap_differences(S)
    if not diffs:
        return None
    return diffs[0], _ap_terms(S, diffs[0])


def lift_cover(cover: ApCover, n: int) -> ApCover:
    """Lift a progression of Z_m (m | n) to Z_n with the same residues as start/diff."""
    if n % cover.modulus:
        raise ModulusMismatch(f"{cover.modulus} does not divide {n}")
    return ApCover(n, cover.start, cover.diff, cover.length)
