"""Exact decision of Freiman (order-2) rectifiability for subsets of Z_n.

A set S = {s_1, ..., s_k} is rectifiable iff integers x_1, ..., x_k exist with
x_i + x_j = x_k + x_l exactly when s_i + s_j = s_k + s_l.  The equalities cut
out a rational subspace V; each required inequality is a linear functional
that must not vanish identically on V.  If none does, a point of V off all
those hyperplanes exists and is found on the moment curve (1, t, t^2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .arith import units
from .core import CyclicSet, coset_split, subgroups
from .verdict import LemmaVerdict

DEFAULT_MAX_SIZE = 12

Pair = tuple[int, int]


@dataclass(frozen=True)
class SumPattern:
    """Index pairs (i <= j) of an ordered base set, grouped by the value of x_i + x_j."""

    size: int
    classes: tuple[tuple[Pair, ...], ...]

    def partition(self) -> frozenset[frozenset[Pair]]:
        return frozenset(frozenset(c) for c in self.classes)

    def same_as(self, other: "SumPattern") -> bool:
        return self.size == other.size and self.partition() == other.partition()


@dataclass(frozen=True)
class RectifyVerdict:
    rectifiable: bool
    integer_model: tuple[int, ...] | None = None
    obstruction: tuple[tuple[int, int], tuple[int, int]] | None = None

    def to_dict(self) -> dict:
        return {
            "rectifiable": self.rectifiable,
            "integer_model": list(self.integer_model) if self.integer_model else None,
            "obstruction": [list(p) for p in self.obstruction] if self.obstruction else None,
        }


def pattern_of(values: Sequence[int], modulus: int | None = None) -> SumPattern:
    """Sum pattern of an ordered list of values, over Z_modulus or over Z if modulus is None."""
    k = len(values)
    groups: dict[int, list[Pair]] = {}
    for i in range(k):
        for j in range(i, k):
            s = values[i] + values[j]
            if modulus is not None:
                s %= modulus
            groups.setdefault(s, []).append((i, j))
    classes = tuple(tuple(groups[s]) for s in sorted(groups))
    return SumPattern(k, classes)


def sum_pattern(S: CyclicSet) -> SumPattern:
    if not S.elements:
        raise ValueError("empty set")
    return pattern_of(S.elements, S.modulus)


def _nullspace(rows: list[list[int]], k: int) -> list[list[int]]:
    """Integer basis (as column vectors of length k) of {x in Q^k : rows . x = 0}."""
    mat = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        mat[r] = [v / p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [vi - f * vr for vi, vr in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * k
        vec[fcol] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -mat[row_idx][fcol]
        scale = lcm(*(v.denominator for v in vec))
        ints = [int(v * scale) for v in vec]
        g = 0
        for v in ints:
            g = gcd(g, v)
        basis.append([v // g for v in ints])
    return basis


def is_rectifiable(S: CyclicSet, max_size: int | None = DEFAULT_MAX_SIZE) -> RectifyVerdict:
    """Decide rectifiability exactly; a positive answer comes with a validated integer model.

    ``max_size=None`` lifts the size bound.
    """
    k = len(S)
    if k == 0:
        raise ValueError("empty set")
    if max_size is not None and k > max_size:
        raise ValueError(f"set of size {k} exceeds the rectification bound {max_size}")
    if k == 1:
        return RectifyVerdict(True, (0,))
    pattern = sum_pattern(S)
    rows = []
    for cls in pattern.classes:
        for p, q in zip(cls, cls[1:]):
            row = [0] * k
            row[p[0]] += 1
            row[p[1]] += 1
            row[q[0]] -= 1
            row[q[1]] -= 1
            rows.append(row)
    basis = _nullspace(rows, k) if rows else [[int(i == j) for i in range(k)] for j in range(k)]
    # N[i] = coordinates of x_i in terms of the basis parameters
    N = np.array(basis, dtype=object).T if basis else np.zeros((k, 0), dtype=object)
    reps = [cls[0] for cls in pattern.classes]
    images = [N[i] + N[j] for i, j in reps]
    # one representative per class suffices: members of a class agree on V
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if not any(images[a] - images[b]):
                (i, j), (u, v) = reps[a], reps[b]
                el = S.elements
                return RectifyVerdict(False, obstruction=((el[i], el[j]), (el[u], el[v])))
    r = N.shape[1]
    t = 2
    while True:
        point = np.array([t**e for e in range(r)], dtype=object)
        x = [int(sum(N[i] * point)) for i in range(k)]
        sums = [x[i] + x[j] for i, j in reps]
        if len(set(sums)) == len(sums):
            break
        t += 1
    lo = min(x)
    g = 0
    for v in x:
        g = gcd(g, v - lo)
    model = tuple((v - lo) // g for v in x)
    if not pattern_of(model).same_as(pattern):
        raise AssertionError(f"constructed model {model} does not realise the sum pattern of {S}")
    return RectifyVerdict(True, model)


def interval_rectify(S: CyclicSet) -> tuple[int, int] | None:
    """Find a unit u and shift c with u*S + c inside [0, floor((n+1)/2) - 1].

    Smallest u wins, then smallest c.  A hit means S is rectifiable; a miss
    says nothing.
    """
    if not S.elements:
        raise ValueError("empty set")
    n = S.modulus
    width = (n + 1) // 2
    us = np.array(units(n), dtype=np.int64)
    els = np.array(S.elements, dtype=np.int64)
    pos = np.sort((us[:, None] * els[None, :]) % n, axis=1)
    gaps = np.diff(pos, axis=1)
    wrap = pos[:, 0] + n - pos[:, -1]
    allgaps = np.concatenate([gaps, wrap[:, None]], axis=1)
    lengths = n - allgaps.max(axis=1) + 1
    if len(S) == 1:
        lengths = np.ones_like(lengths)
    ok = np.nonzero(lengths <= width)[0]
    if not len(ok):
        return None
    row = int(ok[0])
    u = int(us[row])
    p = [int(v) for v in pos[row]]
    k = len(p)
    shifts = set()
    for i in range(k):
        nxt = p[(i + 1) % k]
        gap = (nxt - p[i]) % n or n
        span = n - gap + 1
        if span <= width:
            for slack in range(width - span + 1):
                shifts.add((-(nxt - slack)) % n)
    return u, min(shifts)


def rect_coset_bound_verdict(A: CyclicSet, max_size: int | None = DEFAULT_MAX_SIZE) -> LemmaVerdict:
    """A rectifiable set holds at most (|K|+1)/2 points of any coset of any subgroup K."""
    if not is_rectifiable(A, max_size=max_size).rectifiable:
        return LemmaVerdict("rect2a", False, True, {}, "not rectifiable")
    worst = None
    for K in subgroups(A.modulus):
        for rep, part in coset_split(A, K):
            if 2 * len(part) > K.order + 1:
                return LemmaVerdict("rect2a", True, False,
                                    {"subgroup_order": K.order, "coset_rep": rep, "count": len(part)})
            if worst is None or len(part) * 2 - K.order > worst[0]:
                worst = (len(part) * 2 - K.order, K.order, len(part))
    return LemmaVerdict("rect2a", True, True, {"tightest_subgroup_order": worst[1], "count": worst[2]})
