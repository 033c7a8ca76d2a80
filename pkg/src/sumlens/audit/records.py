"""Annotation records for the numeric hallucination audit.

Labels follow the four-type taxonomy plus an explicit no-hallucination
outcome; Pending exists so half-finished queues survive restarts. Two
protocol rules are enforced at the schema level: a no-hallucination verdict
must cite the evidence quote that substantiates the value, and a
hallucination verdict must explain itself in the comment.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace


class SchemaViolation(Exception):
    """The record breaks a protocol invariant."""


class AnnotationLabel(str, enum.Enum):
    NO_HALLUCINATION = "no_hallucination"
    FABRICATED_NUMBER = "fabricated_number"
    ROUNDING_ERROR = "rounding_error"
    ARITHMETIC_ERROR = "arithmetic_error"
    CONTEXT_MISMATCH = "context_mismatch"
    PENDING = "pending"


HALLUCINATION_LABELS = frozenset(
    {
        AnnotationLabel.FABRICATED_NUMBER,
        AnnotationLabel.ROUNDING_ERROR,
        AnnotationLabel.ARITHMETIC_ERROR,
        AnnotationLabel.CONTEXT_MISMATCH,
    }
)

# Working definitions shown to annotators, one per taxonomy label.
LABEL_DEFINITIONS = {
    AnnotationLabel.NO_HALLUCINATION: (
        "A report quote accurately matches the context and usage of the "
        "numeric value in the summary."
    ),
    AnnotationLabel.FABRICATED_NUMBER: (
        "The presence of a specific numeric value in a generated text that "
        "lacks any corresponding references."
    ),
    AnnotationLabel.ROUNDING_ERROR: (
        "Discrepancy arising from the rounding off of numeric values."
    ),
    AnnotationLabel.ARITHMETIC_ERROR: (
        "Numbers generated from incorrect mathematical calculations applied "
        "to numeric values from the report."
    ),
    AnnotationLabel.CONTEXT_MISMATCH: (
        "An inconsistency where the same numeric value applies to different "
        "contexts in the report vs. in the summary."
    ),
}


class MatchKind(str, enum.Enum):
    EXACT = "exact"
    FORMAT_VARIANT = "format_variant"


@dataclass(frozen=True, slots=True)
class CandidateQuote:
    location: str  # "sentence:<idx>" or "cell:<paragraph>:<row>:<col>"
    quote_text: str
    match_kind: MatchKind
    matched_value: str

    def to_dict(self) -> dict:
        return {
            "location": self.location,
            "quote_text": self.quote_text,
            "match_kind": self.match_kind.value,
            "matched_value": self.matched_value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CandidateQuote":
        return cls(
            location=data["location"],
            quote_text=data["quote_text"],
            match_kind=MatchKind(data["match_kind"]),
            matched_value=data["matched_value"],
        )


@dataclass(frozen=True, slots=True)
class AnnotationRecord:
    task_key: str  # one per (summary_id, mention span)
    summary_id: str
    summary_sentence_text: str
    value: str  # decimal as text, exactness preserved
    label: AnnotationLabel
    candidates: tuple[CandidateQuote, ...] = ()
    evidence_quote: str | None = None
    comment: str = ""
    annotator: str = ""
    revision: int = 1
    timestamp: str = ""
    model: str = ""
    prompt_kind: str = ""

    def to_dict(self) -> dict:
        return {
            "task_key": self.task_key,
            "summary_id": self.summary_id,
            "summary_sentence_text": self.summary_sentence_text,
            "value": self.value,
            "label": self.label.value,
            "candidates": [c.to_dict() for c in self.candidates],
            "evidence_quote": self.evidence_quote,
            "comment": self.comment,
            "annotator": self.annotator,
            "revision": self.revision,
            "timestamp": self.timestamp,
            "model": self.model,
            "prompt_kind": self.prompt_kind,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnnotationRecord":
        return cls(
            task_key=data["task_key"],
            summary_id=data["summary_id"],
            summary_sentence_text=data["summary_sentence_text"],
            value=data["value"],
            label=AnnotationLabel(data["label"]),
            candidates=tuple(CandidateQuote.from_dict(c) for c in data["candidates"]),
            evidence_quote=data.get("evidence_quote"),
            comment=data.get("comment", ""),
            annotator=data.get("annotator", ""),
            revision=data["revision"],
            timestamp=data.get("timestamp", ""),
            model=data.get("model", ""),
            prompt_kind=data.get("prompt_kind", ""),
        )


def validate_record(record: AnnotationRecord) -> None:
    if record.revision < 1:
        raise SchemaViolation("revision must be at least 1")
    if record.label is AnnotationLabel.PENDING:
        return
    if record.label is AnnotationLabel.NO_HALLUCINATION and not record.evidence_quote:
        raise SchemaViolation("no-hallucination outcomes must cite an evidence quote")
    if record.label in HALLUCINATION_LABELS and not record.comment.strip():
        raise SchemaViolation("hallucination outcomes must carry an explanatory comment")
