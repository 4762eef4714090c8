from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class LemmaVerdict:
    """Outcome of checking one implication on concrete data.

    ``conclusion_holds`` only means something when ``hypothesis_holds`` is
    true; a true hypothesis with a false conclusion is a violation.
    """

    lemma: str
    hypothesis_holds: bool
    conclusion_holds: bool
    witness: dict[str, Any] = field(default_factory=dict)
    detail: str = ""

    @property
    def violation(self) -> bool:
        return self.hypothesis_holds and not self.conclusion_holds

    @property
    def vacuous(self) -> bool:
        return not self.hypothesis_holds

    def to_dict(self) -> dict[str, Any]:
        return {
            "lemma": self.lemma,
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion_holds": self.conclusion_holds,
            "witness": jsonable(self.witness),
            "detail": self.detail,
        }


def jsonable(obj: Any) -> Any:
    """Convert nested witness payloads into plain JSON types."""
    from .core import ApCover, CyclicSet, Subgroup

    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, CyclicSet):
        return str(obj)
    if isinstance(obj, Subgroup):
        return {"modulus": obj.modulus, "order": obj.order}
    if isinstance(obj, ApCover):
        return {"modulus": obj.modulus, "start": obj.start, "diff": obj.diff, "length": obj.length}
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj
