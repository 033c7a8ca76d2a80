"""Value matching, per-report number index, source typing, and density."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal

from ..corpus.model import Document
from .mentions import (
    NumericMention,
    ProseRef,
    Scale,
    extract_numbers,
    extract_prose_numbers,
    extract_table_numbers,
)


class ZeroWords(Exception):
    """Density is undefined for a summary with no words."""


class SourceType(str, enum.Enum):
    A = "A"  # value appears only in report prose
    B = "B"  # only in report tables
    C = "C"  # in both
    D = "D"  # in neither


def numbers_match(a: NumericMention, b: NumericMention) -> bool:
    """Exact canonical-magnitude equality; percentages only match percentages."""
    if (a.scale is Scale.PERCENT) != (b.scale is Scale.PERCENT):
        return False
    return a.magnitude == b.magnitude


@dataclass(frozen=True, slots=True)
class IndexedMention:
    mention: NumericMention
    paragraph_index: int


@dataclass(frozen=True, slots=True)
class NumberIndex:
    prose: tuple[IndexedMention, ...]
    table: tuple[IndexedMention, ...]

    def all_mentions(self) -> tuple[IndexedMention, ...]:
        return tuple(
            sorted(self.prose + self.table, key=lambda im: im.paragraph_index)
        )

    def in_prose(self, m: NumericMention) -> bool:
        return any(numbers_match(m, im.mention) for im in self.prose)

    def in_table(self, m: NumericMention) -> bool:
        return any(numbers_match(m, im.mention) for im in self.table)


def build_number_index(report: Document) -> NumberIndex:
    prose = []
    for m in extract_prose_numbers(report):
        assert isinstance(m.container, ProseRef)
        para = report.sentences[m.container.sentence_index].paragraph_index
        prose.append(IndexedMention(m, para))
    table = [
        IndexedMention(m, m.container.paragraph_index)
        for m in extract_table_numbers(report)
    ]
    return NumberIndex(prose=tuple(prose), table=tuple(table))


def classify_source_type(m: NumericMention, index: NumberIndex) -> SourceType:
    in_prose = index.in_prose(m)
    in_table = index.in_table(m)
    if in_prose and in_table:
        return SourceType.C
    if in_prose:
        return SourceType.A
    if in_table:
        return SourceType.B
    return SourceType.D


def word_count(text: str) -> int:
    return len(text.split())


def density_pct(n_numbers: float, n_words: float) -> float:
    if n_words == 0:
        raise ZeroWords("cannot compute density over zero words")
    return 100.0 * n_numbers / n_words


def density(summary_text: str) -> float:
    """Numbers per word, as a percentage of whitespace-delimited words."""
    words = word_count(summary_text)
    if words == 0:
        raise ZeroWords("summary has no words")
    return density_pct(len(extract_numbers(summary_text)), words)


def dedup_magnitudes(mentions: list[IndexedMention]) -> set[tuple[bool, Decimal]]:
    return {
        (im.mention.scale is Scale.PERCENT, im.mention.magnitude) for im in mentions
    }
