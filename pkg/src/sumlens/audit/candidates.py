"""Candidate quote extraction for one summary value.

Every report sentence and table cell holding a matching value (same
canonical magnitude, any surface format) becomes a candidate, in document
order. No ranking: the human judges context, so the machine must not bias
the list. An empty list is meaningful and routes the annotator to a full
report search.
"""

from __future__ import annotations

from ..corpus.model import Document
from ..numerics.matching import NumberIndex, build_number_index, numbers_match
from ..numerics.mentions import NumericMention, ProseRef, TableCellRef
from .records import CandidateQuote, MatchKind


def _location(container) -> str:
    if isinstance(container, ProseRef):
        return f"sentence:{container.sentence_index}"
    return f"cell:{container.paragraph_index}:{container.row}:{container.col}"


def extract_candidates(
    value: NumericMention,
    report: Document,
    index: NumberIndex | None = None,
) -> list[CandidateQuote]:
    if index is None:
        index = build_number_index(report)
    seen: set[str] = set()
    out: list[CandidateQuote] = []
    for im in index.all_mentions():
        if not numbers_match(value, im.mention):
            continue
        container = im.mention.container
        location = _location(container)
        if location in seen:
            continue
        seen.add(location)
        if isinstance(container, ProseRef):
            quote = report.sentence_text(container.sentence_index)
        else:
            quote = _cell_quote(report, container)
        kind = (
            MatchKind.EXACT
            if im.mention.raw_text == value.raw_text
            else MatchKind.FORMAT_VARIANT
        )
        out.append(
            CandidateQuote(
                location=location,
                quote_text=quote,
                match_kind=kind,
                matched_value=str(im.mention.value),
            )
        )
    return out


def _cell_quote(report: Document, ref: TableCellRef) -> str:
    table = report.paragraphs[ref.paragraph_index].table
    for cell in table.cells:
        if cell.row == ref.row and cell.col == ref.col:
            return cell.raw_text
    return ""
