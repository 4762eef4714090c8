"""Subsets of Z_n up to the affine maps x -> u*x + g (u a unit).

The representative of an orbit is the member with the smallest bitmask
(equivalently, the lexicographically smallest descending element list).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from ..arith import totient, units
from ..core import CyclicSet, mask_period

SWEEP_BOUND = 18


@dataclass(frozen=True)
class CanonicalClass:
    modulus: int
    representative: CyclicSet
    orbit_size: int


def _desc_key(elements) -> tuple[int, ...]:
    return tuple(sorted(elements, reverse=True))


def _translation_min(elements, n: int) -> tuple[int, ...]:
    """Smallest translate (the minimum always contains 0)."""
    return min(_desc_key((e - x) % n for e in elements) for x in elements)


def canonical_form(A: CyclicSet) -> CanonicalClass:
    if not A.elements:
        raise ValueError("empty set")
    n = A.modulus
    best = None
    own = _translation_min(A.elements, n)
    matches = 0
    for u in units(n):
        dil = [(u * a) % n for a in A.elements]
        key = _translation_min(dil, n)
        if best is None or key < best:
            best = key
        if key == own:
            matches += 1
    # |affine stabilizer| = (#units mapping A to a translate of A) * |translation stabilizer|
    trans_stab = n // _period(A)
    orbit = n * totient(n) // (matches * trans_stab)
    return CanonicalClass(n, CyclicSet(n, tuple(sorted(best))), orbit)


def _period(A: CyclicSet) -> int:
    n = A.modulus
    if A.dense:
        return mask_period(A.mask, n)
    from ..core import stabilizer
    return n // stabilizer(A).order


def _rotate_all(masks: np.ndarray, n: int) -> np.ndarray:
    full = (1 << n) - 1
    return ((masks << 1) | (masks >> (n - 1))) & full


def _dilate_all(masks: np.ndarray, n: int, u: int) -> np.ndarray:
    out = np.zeros_like(masks)
    for i in range(n):
        out |= ((masks >> i) & 1) << ((u * i) % n)
    return out


@lru_cache(maxsize=32)
def _orbit_table(n: int, translations_only: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """(representative masks, orbit sizes) over all nonempty subsets of Z_n."""
    if n > 26:
        raise ValueError(f"exhaustive enumeration refused for n = {n}")
    masks = np.arange(1, 1 << n, dtype=np.int64)
    canon = masks.copy()
    for u in ([1] if translations_only else units(n)):
        cur = _dilate_all(masks, n, u) if u != 1 else masks.copy()
        for _ in range(n):
            np.minimum(canon, cur, out=canon)
            cur = _rotate_all(cur, n)
    reps, counts = np.unique(canon, return_counts=True)
    return reps, counts


def _popcount(arr: np.ndarray) -> np.ndarray:
    return np.array([int(x).bit_count() for x in arr], dtype=np.int64)


def enumerate_canonical(n: int, size_min: int = 1, size_max: int | None = None,
                        bound: int = SWEEP_BOUND) -> Iterator[CanonicalClass]:
    """Every affine class of subsets with size in [size_min, size_max], by (size, mask)."""
    if n > bound:
        raise ValueError(f"n = {n} exceeds the sweep bound {bound}")
    size_max = n if size_max is None else size_max
    reps, counts = _orbit_table(n)
    sizes = _popcount(reps)
    order = np.lexsort((reps, sizes))
    for i in order:
        k = int(sizes[i])
        if size_min <= k <= size_max:
            yield CanonicalClass(n, CyclicSet.from_mask(n, int(reps[i])), int(counts[i]))


def translation_classes(n: int, size_min: int = 1, size_max: int | None = None,
                        bound: int = SWEEP_BOUND) -> list[int]:
    """Bitmasks of one representative per translation class (used for the second set of a pair)."""
    if n > bound:
        raise ValueError(f"n = {n} exceeds the sweep bound {bound}")
    size_max = n if size_max is None else size_max
    reps, _ = _orbit_table(n, True)
    sizes = _popcount(reps)
    keep = (sizes >= size_min) & (sizes <= size_max)
    return [int(x) for x in reps[keep]]
