"""Aggregate hallucination statistics over an annotation store."""

from __future__ import annotations

from dataclasses import dataclass

from .records import HALLUCINATION_LABELS, AnnotationLabel
from .store import AnnotationStore, NoAnnotations


@dataclass(frozen=True)
class HallucinationStats:
    total_annotated: int
    counts: dict[AnnotationLabel, int]
    percentages: dict[AnnotationLabel, float]
    total_rate: float  # sum of hallucination-type percentages

    def hallucinated(self) -> int:
        return sum(self.counts.get(label, 0) for label in HALLUCINATION_LABELS)


def hallucination_stats(
    store: AnnotationStore,
    model: str | None = None,
    prompt_kind: str | None = None,
) -> HallucinationStats:
    records = [
        r
        for r in store.snapshot().values()
        if r.label is not AnnotationLabel.PENDING
        and (model is None or r.model == model)
        and (prompt_kind is None or r.prompt_kind == prompt_kind)
    ]
    if not records:
        raise NoAnnotations("no finished annotations under this filter")

    counts: dict[AnnotationLabel, int] = {
        label: 0 for label in AnnotationLabel if label is not AnnotationLabel.PENDING
    }
    for r in records:
        counts[r.label] += 1
    total = len(records)
    percentages = {label: 100.0 * n / total for label, n in counts.items()}
    total_rate = sum(percentages[label] for label in HALLUCINATION_LABELS)
    return HallucinationStats(
        total_annotated=total,
        counts=counts,
        percentages=percentages,
        total_rate=total_rate,
    )


def stats_groups(store: AnnotationStore) -> list[tuple[str, str]]:
    """Distinct (model, prompt_kind) pairs with finished annotations."""
    seen = {
        (r.model, r.prompt_kind)
        for r in store.snapshot().values()
        if r.label is not AnnotationLabel.PENDING
    }
    return sorted(seen)
