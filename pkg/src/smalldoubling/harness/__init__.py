from .canonical import SWEEP_BOUND, CanonicalClass, canonical_form, enumerate_canonical, translation_classes
from .report import SCHEMA_VERSION, SweepReport
from .suites import SUITES, certify_elementary, lemma_suite
from .sweep import extremal_scan, sweep_theorem

__all__ = [
    "SCHEMA_VERSION",
    "SUITES",
    "SWEEP_BOUND",
    "CanonicalClass",
    "SweepReport",
    "canonical_form",
    "certify_elementary",
    "enumerate_canonical",
    "extremal_scan",
    "lemma_suite",
    "sweep_theorem",
    "translation_classes",
]
