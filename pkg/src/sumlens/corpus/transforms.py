"""Document variants: seeded paragraph shuffling and budget truncation."""

from __future__ import annotations

import random
from dataclasses import replace

from .model import Document, Paragraph, ParagraphKind, Sentence, reindex


class BudgetTooSmall(Exception):
    """Even the first paragraph exceeds the requested budget."""


def _sentences_by_paragraph(doc: Document) -> dict[int, list[Sentence]]:
    grouped: dict[int, list[Sentence]] = {}
    for s in doc.sentences:
        grouped.setdefault(s.paragraph_index, []).append(s)
    return grouped


def shuffle_document(doc: Document, seed: int) -> Document:
    """Uniformly reorder paragraphs with a seeded permutation.

    Tables move as atomic units (each is a single paragraph). Sentence
    indices are recomputed in the new order; the same seed always yields the
    same permutation.
    """
    order = list(range(len(doc.paragraphs)))
    random.Random(seed).shuffle(order)
    shuffled = [doc.paragraphs[i] for i in order]
    paragraphs, sentences = reindex(shuffled, _sentences_by_paragraph(doc))
    return replace(doc, paragraphs=paragraphs, sentences=sentences)


def truncate_to_budget(doc: Document, budget_tokens: int) -> tuple[Document, int]:
    """Keep a head prefix of paragraphs whose word total fits the budget.

    Returns the truncated document and how many words were dropped. Head-keep
    matches how the summaries actually use the input (beginnings dominate)
    and is the only strategy consistent with per-word truncation accounting.
    """
    if budget_tokens <= 0:
        raise ValueError("budget must be positive")
    counts = [p.word_count() for p in doc.paragraphs]
    if counts and counts[0] > budget_tokens:
        raise BudgetTooSmall(
            f"first paragraph is {counts[0]} words, budget is {budget_tokens}"
        )
    kept = 0
    running = 0
    for c in counts:
        if running + c > budget_tokens:
            break
        running += c
        kept += 1
    dropped = sum(counts[kept:])
    if kept == len(doc.paragraphs):
        return doc, 0
    head = list(doc.paragraphs[:kept])
    paragraphs, sentences = reindex(head, _sentences_by_paragraph(doc))
    total = sum(len(s.content_tokens) for s in sentences)
    truncated = replace(
        doc, paragraphs=paragraphs, sentences=sentences, total_content_tokens=total
    )
    return truncated, dropped
