"""Lenient HTML parsing of a filing section into the document model.

Prose becomes paragraphs in document order; every ``<table>`` element becomes
one table paragraph whose cell text is preserved verbatim, newline artifacts
included, because downstream matching runs against the raw ``<td>`` contents.
The parser tolerates the usual EDGAR HTML mess and only raises on nesting it
cannot recover from.
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

from .model import Cell, Document, Paragraph, ParagraphKind, RawFiling, Table


class EmptyDocument(Exception):
    """The filing HTML contained no extractable text."""


class MalformedHtml(Exception):
    """Unrecoverable tag nesting (e.g. a table close with no table open)."""


_BLOCK_TAGS = {
    "p", "div", "li", "h1", "h2", "h3", "h4", "h5", "h6",
    "blockquote", "center", "section", "article", "ul", "ol",
}
_SKIP_TAGS = {"script", "style", "noscript"}

_WS_RUN = re.compile(r"[ \t\r\f\v ]+")
_NL_RUN = re.compile(r" ?\n ?")


def _clean_prose(parts: list[str]) -> str:
    text = "".join(parts)
    text = _WS_RUN.sub(" ", text)
    text = _NL_RUN.sub("\n", text)
    text = re.sub(r"\n{2,}", "\n", text)
    return text.strip()


class _FilingHtmlParser(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.blocks: list[tuple[str, object]] = []
        self._prose: list[str] = []
        self._table_depth = 0
        self._rows: list[list[str]] = []
        self._cell: list[str] | None = None
        self._skip_depth = 0

    # -- prose handling -----------------------------------------------------
    def _flush_prose(self) -> None:
        text = _clean_prose(self._prose)
        self._prose = []
        if text:
            self.blocks.append(("prose", text))

    # -- tag events ----------------------------------------------------------
    def handle_starttag(self, tag: str, attrs) -> None:
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
            return
        if tag == "table":
            self._table_depth += 1
            if self._table_depth == 1:
                self._flush_prose()
                self._rows = []
                self._cell = None
            return
        if self._table_depth >= 1:
            if self._table_depth == 1:
                if tag == "tr":
                    self._close_cell()
                    self._rows.append([])
                elif tag in ("td", "th"):
                    self._close_cell()
                    if not self._rows:
                        self._rows.append([])
                    self._cell = []
            return
        if tag == "br":
            self._prose.append("\n")
        elif tag in _BLOCK_TAGS:
            self._flush_prose()

    def handle_endtag(self, tag: str) -> None:
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
            return
        if tag == "table":
            if self._table_depth == 0:
                raise MalformedHtml("table close without a matching open")
            self._table_depth -= 1
            if self._table_depth == 0:
                self._close_cell()
                self._finish_table()
            return
        if self._table_depth >= 1:
            if self._table_depth == 1 and tag in ("td", "th"):
                self._close_cell()
            return
        if tag in _BLOCK_TAGS:
            self._flush_prose()

    def handle_data(self, data: str) -> None:
        if self._skip_depth:
            return
        if self._table_depth >= 1:
            if self._cell is not None:
                self._cell.append(data)
            return
        self._prose.append(data)

    # -- table assembly -------------------------------------------------------
    def _close_cell(self) -> None:
        if self._cell is not None:
            if not self._rows:
                self._rows.append([])
            self._rows[-1].append("".join(self._cell))
            self._cell = None

    def _finish_table(self) -> None:
        cells = []
        for r, row in enumerate(self._rows):
            for c, raw in enumerate(row):
                cells.append(Cell(row=r, col=c, raw_text=raw))
        self.blocks.append(("table", tuple(cells)))

    def close(self) -> None:
        super().close()
        self._close_cell()
        if self._table_depth > 0:
            # Unclosed table at EOF: salvage what we have.
            self._finish_table()
            self._table_depth = 0
        self._flush_prose()


def _preamble_for(blocks: list[tuple[str, object]], table_pos: int) -> str:
    """The nearest preceding prose line, typically a units remark."""
    for kind, payload in reversed(blocks[:table_pos]):
        if kind == "prose":
            lines = [ln for ln in str(payload).split("\n") if ln.strip()]
            if lines:
                return lines[-1].strip()
    return ""


def parse_filing(raw: RawFiling) -> Document:
    """Parse filing HTML into paragraphs; sentences are populated separately."""
    parser = _FilingHtmlParser()
    parser.feed(raw.item7_html)
    parser.close()

    paragraphs: list[Paragraph] = []
    for pos, (kind, payload) in enumerate(parser.blocks):
        idx = len(paragraphs)
        if kind == "prose":
            paragraphs.append(Paragraph(index=idx, kind=ParagraphKind.PROSE, text=str(payload)))
        else:
            table = Table(cells=payload, preamble=_preamble_for(parser.blocks, pos))
            paragraphs.append(Paragraph(index=idx, kind=ParagraphKind.TABLE, table=table))

    if not paragraphs:
        raise EmptyDocument(f"no extractable text in filing {raw.filing_id!r}")
    return Document(
        filing_id=raw.filing_id,
        paragraphs=tuple(paragraphs),
        company=raw.company,
        fiscal_year=raw.fiscal_year,
    )
