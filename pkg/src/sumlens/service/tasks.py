"""Build the annotation task queue from summaries and their reports."""

from __future__ import annotations

from ..audit.candidates import extract_candidates
from ..corpus.model import Document
from ..corpus.segment import split_sentences
from ..gateway.summarize import SummaryRecord
from ..numerics.matching import build_number_index
from ..numerics.mentions import extract_numbers
from .queue import AnnotationTask


def task_key_for(summary_id: str, span: tuple[int, int]) -> str:
    return f"{summary_id}#{span[0]}:{span[1]}"


def _sentence_around(text: str, span: tuple[int, int]) -> str:
    for s, e in split_sentences(text):
        if s <= span[0] < e:
            return text[s:e]
    return text


def build_tasks(
    summaries: list[SummaryRecord],
    reports: dict[str, Document],
) -> list[AnnotationTask]:
    """One task per numeric mention in each summary, in deterministic order."""
    tasks: list[AnnotationTask] = []
    for record in summaries:
        report = reports.get(record.filing_id)
        if report is None:
            continue
        index = build_number_index(report)
        for mention in extract_numbers(record.summary_text):
            candidates = extract_candidates(mention, report, index)
            tasks.append(
                AnnotationTask(
                    task_id=len(tasks),
                    task_key=task_key_for(record.summary_id, mention.char_span),
                    summary_id=record.summary_id,
                    filing_id=record.filing_id,
                    value=str(mention.value),
                    value_span=mention.char_span,
                    summary_sentence_text=_sentence_around(
                        record.summary_text, mention.char_span
                    ),
                    candidates=tuple(candidates),
                    model=record.model_name,
                    prompt_kind=record.prompt_kind,
                )
            )
    return tasks
