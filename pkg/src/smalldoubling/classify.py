"""Search for certified structure witnesses of small-doubling sets in Z_n.

Three shapes of witness (with |2A| - |A| written delta):

* DenseCoset  - A inside one H-coset with |A| > |H| / C;
* Regular     - A inside P + H for a progression P of >= 2 terms in distinct
                H-cosets, H proper, (|P| - 1)|H| <= delta;
* Singular    - A meets exactly three H-cosets, not in progression, H proper,
                3|H| <= delta.

In ``aux`` mode the dense case is replaced by the global bound delta >= n / C0
(witness variant ``AuxIncrement``) and the hypothesis additionally asks that A
is not inside a proper coset and |2A| < n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .addcomb import generated_subgroup
from .core import (
    ApCover,
    CyclicSet,
    ModulusMismatch,
    Subgroup,
    cosets_met,
    coset_split,
    in_one_coset,
    is_ap,
    lift_cover,
    min_ap_cover,
    quotient_image,
    subgroups,
    sumset,
)
from .verdict import LemmaVerdict

DENSE = "DenseCoset"
REGULAR = "Regular"
SINGULAR = "Singular"
AUX_INCREMENT = "AuxIncrement"
NONE = "None"


@dataclass(frozen=True)
class Constants:
    C: Fraction = Fraction(30000)
    C0: Fraction = Fraction(24000)

    @classmethod
    def make(cls, C=None, C0=None) -> "Constants":
        """Override either constant; overriding both requires C = 5 C0 / 4."""
        if C is not None and C0 is not None and Fraction(C) * 4 != Fraction(C0) * 5:
            raise ValueError(f"inconsistent constants: C={C} but 5*C0/4={Fraction(C0) * 5 / 4}")
        base = cls()
        return cls(Fraction(C) if C is not None else base.C, Fraction(C0) if C0 is not None else base.C0)

    def to_dict(self) -> dict:
        return {"C": [self.C.numerator, self.C.denominator], "C0": [self.C0.numerator, self.C0.denominator]}


DEFAULT_CONSTANTS = Constants()


@dataclass(frozen=True)
class DoublingData:
    size: int
    doubling: int
    ratio: Fraction
    delta: int

    def to_dict(self) -> dict:
        return {"size": self.size, "doubling": self.doubling,
                "ratio": [self.ratio.numerator, self.ratio.denominator], "delta": self.delta}


def doubling(A: CyclicSet) -> DoublingData:
    if not A.elements:
        raise ValueError("empty set")
    d = len(sumset(A, A))
    return DoublingData(len(A), d, Fraction(d, len(A)), d - len(A))


@dataclass(frozen=True)
class StructureWitness:
    variant: str
    modulus: int
    subgroup: Subgroup | None = None
    progression: ApCover | None = None
    representatives: tuple[int, ...] | None = None
    constant: Fraction | None = None

    @property
    def increment(self) -> int | None:
        """The quantity compared against |2A| - |A|."""
        if self.variant == REGULAR:
            return (self.progression.length - 1) * self.subgroup.order
        if self.variant == SINGULAR:
            return 3 * self.subgroup.order
        return None

    @property
    def trivial_dense(self) -> bool:
        return self.variant == DENSE and self.subgroup.order == self.modulus

    def to_dict(self, A: CyclicSet | None = None) -> dict[str, Any]:
        out: dict[str, Any] = {"variant": self.variant}
        if self.subgroup is not None:
            out["subgroup_order"] = self.subgroup.order
        if self.progression is not None:
            P = self.progression
            out["progression"] = {"start": P.start, "diff": P.diff, "length": P.length}
        if self.representatives is not None:
            out["representatives"] = list(self.representatives)
        if A is not None:
            delta = len(sumset(A, A)) - len(A)
            if self.variant == DENSE:
                dens = Fraction(len(A), self.subgroup.order)
                out["density"] = [dens.numerator, dens.denominator]
                out["trivial"] = self.trivial_dense
                out["inequality"] = {"lhs": [len(A) * self.constant.numerator, self.constant.denominator],
                                     "rhs": [self.subgroup.order, 1], "relation": ">"}
            elif self.variant in (REGULAR, SINGULAR):
                out["inequality"] = {"lhs": [self.increment, 1], "rhs": [delta, 1], "relation": "<="}
            elif self.variant == AUX_INCREMENT:
                out["inequality"] = {"lhs": [delta * self.constant.numerator, self.constant.denominator],
                                     "rhs": [self.modulus, 1], "relation": ">="}
        return out


@dataclass
class WitnessSearch:
    mode: str
    doubling: DoublingData
    hypothesis_holds: bool
    hypothesis_detail: dict[str, bool]
    witnesses: list[StructureWitness] = field(default_factory=list)
    best: StructureWitness | None = None

    @property
    def best_variant(self) -> str:
        return self.best.variant if self.best else NONE

    def to_dict(self, A: CyclicSet | None = None) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "doubling": self.doubling.to_dict(),
            "hypothesis_holds": self.hypothesis_holds,
            "hypothesis_detail": self.hypothesis_detail,
            "best": self.best.to_dict(A) if self.best else {"variant": NONE},
            "witnesses": [w.to_dict(A) for w in self.witnesses],
        }


def in_proper_coset(A: CyclicSet) -> bool:
    """Is A contained in a coset of a proper subgroup?"""
    return generated_subgroup(A).order < A.modulus


def main_hypothesis(A: CyclicSet) -> bool:
    return 4 * len(sumset(A, A)) < 9 * len(A)


def aux_hypothesis(A: CyclicSet) -> dict[str, bool]:
    d = len(sumset(A, A))
    return {
        "not_in_proper_coset": not in_proper_coset(A),
        "small_doubling": 4 * d < 9 * len(A),
        "sumset_not_full": d < A.modulus,
    }


def _regular_for(A: CyclicSet, H: Subgroup, delta: int) -> StructureWitness | None:
    if not H.proper or H.order > delta:
        return None
    cover = min_ap_cover(A, H)
    if cover.length == 1:
        # A in one H-coset: pad to two terms, the second in the next coset
        cover = ApCover(cover.modulus, cover.start, 1, 2)
    if (cover.length - 1) * H.order > delta:
        return None
    return StructureWitness(REGULAR, A.modulus, H, lift_cover(cover, A.modulus))


def _singular_for(A: CyclicSet, H: Subgroup, delta: int) -> StructureWitness | None:
    if not H.proper or 3 * H.order > delta:
        return None
    image = quotient_image(A, H).image
    if len(image) != 3 or is_ap(image) is not None:
        return None
    reps = tuple(rep for rep, _ in coset_split(A, H))
    return StructureWitness(SINGULAR, A.modulus, H, representatives=reps)


def find_witness(A: CyclicSet, constants: Constants = DEFAULT_CONSTANTS, mode: str = "main") -> WitnessSearch:
    """Exhaustive search over subgroups (smallest first) for every witness shape.

    ``best`` prefers the Regular witness with the smallest (|P|-1)|H|, then the
    Singular witness with the largest H, then the DenseCoset witness with the
    smallest H (or, in aux mode, the AuxIncrement witness).
    """
    if mode not in ("main", "aux"):
        raise ValueError(f"unknown mode {mode!r}")
    data = doubling(A)
    n = A.modulus
    if mode == "main":
        detail = {"small_doubling": main_hypothesis(A)}
    else:
        detail = aux_hypothesis(A)
    search = WitnessSearch(mode, data, all(detail.values()), detail)
    delta = data.delta
    dense, regular, singular = [], [], []
    if mode == "aux" and delta * constants.C0 >= n:
        dense.append(StructureWitness(AUX_INCREMENT, n, constant=constants.C0))
    for H in subgroups(n):
        if mode == "main" and in_one_coset(A, H) and len(A) * constants.C > H.order:
            dense.append(StructureWitness(DENSE, n, H, constant=constants.C))
        w = _regular_for(A, H, delta)
        if w:
            regular.append(w)
        w = _singular_for(A, H, delta)
        if w:
            singular.append(w)
    search.witnesses = regular + singular + dense
    for w in search.witnesses:
        if not verify_witness(A, w):
            raise AssertionError(f"search produced an invalid witness {w} for {A}")
    if regular:
        search.best = min(regular, key=lambda w: (w.increment, w.subgroup.order))
    elif singular:
        search.best = max(singular, key=lambda w: w.subgroup.order)
    elif dense:
        search.best = dense[0]
    return search


def verify_witness(A: CyclicSet, w: StructureWitness) -> bool:
    """Re-check a witness from scratch with core primitives only."""
    n = A.modulus
    if w.modulus != n:
        raise ModulusMismatch(f"witness modulus {w.modulus} vs set modulus {n}")
    for part in (w.subgroup, w.progression):
        if part is not None and part.modulus != n:
            raise ModulusMismatch(f"witness component modulus {part.modulus} vs {n}")
    if not A.elements:
        return False
    delta = len(sumset(A, A)) - len(A)
    H = w.subgroup
    if w.variant == DENSE:
        return H is not None and w.constant is not None and in_one_coset(A, H) and len(A) * w.constant > H.order
    if w.variant == AUX_INCREMENT:
        return w.constant is not None and delta * w.constant >= n
    if w.variant == REGULAR:
        P = w.progression
        return (
            H is not None
            and P is not None
            and H.proper
            and P.length >= 2
            and P.distinct_cosets(H)
            and P.covers(A, H)
            and (P.length - 1) * H.order <= delta
        )
    if w.variant == SINGULAR:
        if H is None or not H.proper or w.representatives is None:
            return False
        reps = w.representatives
        m = H.step
        return (
            len(reps) == 3
            and all(r in A for r in reps)
            and len({r % m for r in reps}) == 3
            and cosets_met(A, H) == 3
            and is_ap(CyclicSet.of(m, reps)) is None
            and 3 * H.order <= delta
        )
    return False


def combo_verdict(A: CyclicSet, L: Subgroup, max_rect_size: int | None = None) -> LemmaVerdict:
    """If phi_L(A) is rectifiable with s points and |2A| < 3(1 - 1/s)|A|, A is regular."""
    from .rectify import is_rectifiable

    image = quotient_image(A, L).image
    s = len(image)
    d = len(sumset(A, A))
    hyp = s * d < 3 * (s - 1) * len(A)
    if hyp:
        hyp = is_rectifiable(image, max_size=max_rect_size).rectifiable
    if not hyp:
        return LemmaVerdict("combo", False, True)
    delta = d - len(A)
    found = [w for H in subgroups(A.modulus) if (w := _regular_for(A, H, delta))]
    if not found:
        return LemmaVerdict("combo", True, False, {"L_order": L.order, "s": s}, "no regular witness")
    best = min(found, key=lambda w: (w.increment, w.subgroup.order))
    return LemmaVerdict("combo", True, True, {"L_order": L.order, "s": s, "witness": best.to_dict()})
