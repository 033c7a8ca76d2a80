"""Immutable document model shared by every analysis stage.

A filing is parsed into an ordered list of paragraphs (prose or table),
then segmented into sentences with token spans. All types are frozen:
downstream stages may process many documents in parallel without locks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace


class ParagraphKind(str, enum.Enum):
    PROSE = "prose"
    TABLE = "table"


@dataclass(frozen=True, slots=True)
class RawFiling:
    """One pre-downloaded filing section, as exported to JSON."""

    filing_id: str
    company: str
    fiscal_year: int
    item7_html: str
    source_path: str = ""


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    start: int
    end: int


@dataclass(frozen=True, slots=True)
class Sentence:
    """One prose sentence. ``char_span`` indexes into the owning paragraph text.

    ``content_tokens`` are the casefolded tokens with stopwords removed; their
    spans still point at the original surface text.
    """

    index: int
    paragraph_index: int
    char_span: tuple[int, int]
    tokens: tuple[Token, ...]
    content_tokens: tuple[Token, ...]

    @property
    def content_texts(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.content_tokens)


@dataclass(frozen=True, slots=True)
class Cell:
    row: int
    col: int
    raw_text: str


@dataclass(frozen=True, slots=True)
class Table:
    cells: tuple[Cell, ...]
    preamble: str = ""

    def joined_text(self) -> str:
        """Raw cell text joined in row-major order (matcher-facing form)."""
        return " ".join(c.raw_text for c in self.cells)


@dataclass(frozen=True, slots=True)
class Paragraph:
    index: int
    kind: ParagraphKind
    text: str = ""
    table: Table | None = None

    def word_count(self) -> int:
        if self.kind is ParagraphKind.TABLE and self.table is not None:
            return sum(len(c.raw_text.split()) for c in self.table.cells)
        return len(self.text.split())


@dataclass(frozen=True, slots=True)
class Document:
    filing_id: str
    paragraphs: tuple[Paragraph, ...] = ()
    sentences: tuple[Sentence, ...] = ()
    total_content_tokens: int = 0
    company: str = ""
    fiscal_year: int = 0

    def sentence_text(self, sentence_index: int) -> str:
        s = self.sentences[sentence_index]
        start, end = s.char_span
        return self.paragraphs[s.paragraph_index].text[start:end]

    def prose_word_count(self) -> int:
        return sum(
            p.word_count() for p in self.paragraphs if p.kind is ParagraphKind.PROSE
        )

    def table_word_count(self) -> int:
        return sum(
            p.word_count() for p in self.paragraphs if p.kind is ParagraphKind.TABLE
        )

    def word_count(self) -> int:
        return sum(p.word_count() for p in self.paragraphs)


def reindex(paragraphs: list[Paragraph], sentences_by_paragraph: dict[int, list[Sentence]]) -> tuple[tuple[Paragraph, ...], tuple[Sentence, ...]]:
    """Renumber paragraphs densely from 0 and re-thread sentence indices.

    ``sentences_by_paragraph`` is keyed by each paragraph's *old* index.
    """
    new_paragraphs: list[Paragraph] = []
    new_sentences: list[Sentence] = []
    for new_idx, para in enumerate(paragraphs):
        old_idx = para.index
        new_paragraphs.append(replace(para, index=new_idx))
        for sent in sentences_by_paragraph.get(old_idx, []):
            new_sentences.append(
                replace(sent, index=len(new_sentences), paragraph_index=new_idx)
            )
    return tuple(new_paragraphs), tuple(new_sentences)
