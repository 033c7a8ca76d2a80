from .candidates import extract_candidates
from .records import (
    HALLUCINATION_LABELS,
    LABEL_DEFINITIONS,
    AnnotationLabel,
    AnnotationRecord,
    CandidateQuote,
    MatchKind,
    SchemaViolation,
    validate_record,
)
from .stats import HallucinationStats, hallucination_stats, stats_groups
from .store import AnnotationStore, NoAnnotations, StaleRevision

__all__ = [
    "extract_candidates",
    "HALLUCINATION_LABELS",
    "LABEL_DEFINITIONS",
    "AnnotationLabel",
    "AnnotationRecord",
    "CandidateQuote",
    "MatchKind",
    "SchemaViolation",
    "validate_record",
    "HallucinationStats",
    "hallucination_stats",
    "stats_groups",
    "AnnotationStore",
    "NoAnnotations",
    "StaleRevision",
]
