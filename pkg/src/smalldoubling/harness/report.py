from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1

PREAMBLE = ("At desk-scale n the trichotomy's constants make case i almost always available, "
            "so the theorem sweep is a consistency check; the lemma suites carry the verification.")


@dataclass
class SweepReport:
    """Aggregate outcome of a sweep or lemma suite.

    ``merge`` is commutative and associative, so shards may be combined in
    any order; violations are kept sorted by their JSON encoding.
    """

    name: str
    config: dict[str, Any]
    n_lo: int | None = None
    n_hi: int | None = None
    examined: int = 0
    hypothesis: int = 0
    vacuous: int = 0
    passed: int = 0
    counts: Counter = field(default_factory=Counter)
    violations: list[dict] = field(default_factory=list)
    min_hits: int = 0
    runtime_ms: float | None = None

    def record(self, hypothesis: bool, ok: bool, violation: dict | None = None, n: int | None = None):
        self.examined += 1
        if n is not None:
            self.n_lo = n if self.n_lo is None else min(self.n_lo, n)
            self.n_hi = n if self.n_hi is None else max(self.n_hi, n)
        if not hypothesis:
            self.vacuous += 1
            return
        self.hypothesis += 1
        if ok:
            self.passed += 1
        else:
            self.violations.append(violation or {})

    def bump(self, key: str, by: int = 1):
        self.counts[key] += by

    def merge(self, other: "SweepReport") -> "SweepReport":
        if self.name != other.name:
            raise ValueError(f"cannot merge {self.name!r} with {other.name!r}")
        lo = [x for x in (self.n_lo, other.n_lo) if x is not None]
        hi = [x for x in (self.n_hi, other.n_hi) if x is not None]
        rts = [x for x in (self.runtime_ms, other.runtime_ms) if x is not None]
        return SweepReport(
            self.name,
            self.config,
            min(lo) if lo else None,
            max(hi) if hi else None,
            self.examined + other.examined,
            self.hypothesis + other.hypothesis,
            self.vacuous + other.vacuous,
            self.passed + other.passed,
            self.counts + other.counts,
            sorted(self.violations + other.violations, key=_vkey),
            max(self.min_hits, other.min_hits),
            sum(rts) if rts else None,
        )

    @property
    def hits_ok(self) -> bool:
        return self.hypothesis >= self.min_hits

    @property
    def ok(self) -> bool:
        return not self.violations and self.hits_ok

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "preamble": PREAMBLE,
            "config": self.config,
            "n_range": [self.n_lo, self.n_hi],
            "counts": {
                "examined": self.examined,
                "hypothesis": self.hypothesis,
                "vacuous": self.vacuous,
                "passed": self.passed,
                "violations": len(self.violations),
                "min_hypothesis_hits": self.min_hits,
                "hit_rate": round(self.hypothesis / self.examined, 6) if self.examined else 0.0,
                **{k: self.counts[k] for k in sorted(self.counts)},
            },
            "violations": sorted(self.violations, key=_vkey),
            "ok": self.ok,
        }
        if timing:
            out["runtime_ms"] = None if self.runtime_ms is None else round(self.runtime_ms, 1)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


def _vkey(v: dict) -> str:
    return json.dumps(v, sort_keys=True)
