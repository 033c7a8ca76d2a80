"""Numeric mention extraction from prose and table cells.

Extraction is regex-only. The target pattern accepts integers and decimals
with comma thousand-separators; its lookarounds reject digits glued to
letters or hyphens (entity names like "COVID-19" or "ATA190") while
deliberately letting a trailing k/K or m/M suffix through. Matches inside
date phrases and residual "Table N:" indices are dropped. Values are exact
decimals throughout; binary floats never touch financial figures here.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from decimal import Decimal

from ..corpus.model import Document, ParagraphKind

DATE_PATTERN = re.compile(
    r"(January|February|March|April|May|June|July|August|September|October|"
    r"November|December) \d{1,2},"
)
TABLE_INDEX_PATTERN = re.compile(r"Table \d+:")
TARGET_PATTERN = re.compile(
    r"(?<!\d)(?<![a-zA-Z-])\d{1,3}(?![a-jln-zA-JLN-Z\d])(?:,\d{3})*(?:\.\d+)?"
)

_UNIT_WORDS = {
    "thousand": "THOUSAND",
    "thousands": "THOUSAND",
    "million": "MILLION",
    "millions": "MILLION",
    "billion": "BILLION",
    "billions": "BILLION",
    "percent": "PERCENT",
    "percentage": "PERCENT",
}
_WORD_AHEAD = re.compile(r"[A-Za-z%]+")


class Scale(str, enum.Enum):
    NONE = "none"
    THOUSAND = "thousand"
    MILLION = "million"
    BILLION = "billion"
    PERCENT = "percent"


SCALE_MULTIPLIER = {
    Scale.NONE: Decimal(1),
    Scale.THOUSAND: Decimal(10) ** 3,
    Scale.MILLION: Decimal(10) ** 6,
    Scale.BILLION: Decimal(10) ** 9,
    Scale.PERCENT: Decimal(1),
}


@dataclass(frozen=True, slots=True)
class ProseRef:
    sentence_index: int


@dataclass(frozen=True, slots=True)
class TableCellRef:
    paragraph_index: int
    row: int
    col: int


Container = ProseRef | TableCellRef


@dataclass(frozen=True, slots=True)
class NumericMention:
    raw_text: str
    value: Decimal
    scale: Scale
    char_span: tuple[int, int]
    container: Container | None = None
    from_suffix: bool = False

    @property
    def magnitude(self) -> Decimal:
        return self.value * SCALE_MULTIPLIER[self.scale]

    def decimals(self) -> int:
        exponent = self.value.as_tuple().exponent
        return -exponent if isinstance(exponent, int) and exponent < 0 else 0


def _infer_scale(text: str, end: int) -> tuple[Scale, bool]:
    """Unit from the immediate suffix or the next two words, if any."""
    if end < len(text):
        ch = text[end]
        nxt = text[end + 1] if end + 1 < len(text) else ""
        if ch == "%":
            return Scale.PERCENT, False
        if ch in "kK" and not nxt.isalnum():
            return Scale.THOUSAND, True
        if ch in "mM" and not nxt.isalnum():
            return Scale.MILLION, True
    window = text[end : end + 40]
    for word in _WORD_AHEAD.findall(window)[:2]:
        unit = _UNIT_WORDS.get(word.casefold())
        if unit:
            return Scale[unit], False
        if word == "%":
            return Scale.PERCENT, False
    return Scale.NONE, False


def extract_numbers(text: str) -> list[NumericMention]:
    """All financially meaningful numbers in ``text``, container left unset."""
    excluded = [m.span() for m in DATE_PATTERN.finditer(text)]
    excluded += [m.span() for m in TABLE_INDEX_PATTERN.finditer(text)]

    mentions: list[NumericMention] = []
    for m in TARGET_PATTERN.finditer(text):
        span = m.span()
        if any(span[0] < e and s < span[1] for s, e in excluded):
            continue
        scale, from_suffix = _infer_scale(text, span[1])
        mentions.append(
            NumericMention(
                raw_text=m.group(0),
                value=Decimal(m.group(0).replace(",", "")),
                scale=scale,
                char_span=span,
                from_suffix=from_suffix,
            )
        )
    return mentions


def preamble_scale(preamble: str) -> Scale:
    lowered = preamble.casefold()
    if "thousand" in lowered:
        return Scale.THOUSAND
    if "million" in lowered:
        return Scale.MILLION
    if "billion" in lowered:
        return Scale.BILLION
    return Scale.NONE


def extract_table_numbers(doc: Document) -> list[NumericMention]:
    """Per-cell extraction; unit-less cells inherit the preamble's scale."""
    mentions: list[NumericMention] = []
    for para in doc.paragraphs:
        if para.kind is not ParagraphKind.TABLE or para.table is None:
            continue
        inherited = preamble_scale(para.table.preamble)
        for cell in para.table.cells:
            for m in extract_numbers(cell.raw_text):
                scale = m.scale
                if scale is Scale.NONE and inherited is not Scale.NONE:
                    scale = inherited
                mentions.append(
                    replace(
                        m,
                        scale=scale,
                        container=TableCellRef(para.index, cell.row, cell.col),
                    )
                )
    return mentions


def extract_prose_numbers(doc: Document) -> list[NumericMention]:
    """Per-sentence extraction over prose; spans index into the sentence text."""
    mentions: list[NumericMention] = []
    for sent in doc.sentences:
        text = doc.sentence_text(sent.index)
        for m in extract_numbers(text):
            mentions.append(replace(m, container=ProseRef(sent.index)))
    return mentions
