"""Deterministic sentence segmentation and tokenization.

Rule-based on purpose: a measurement tool needs byte-stable output more than
it needs marginally better boundary accuracy, so there is no model anywhere
in this path.
"""

from __future__ import annotations

import re
from dataclasses import replace
from typing import Collection

from .model import Document, Paragraph, ParagraphKind, Sentence, Token
from .stopwords import DEFAULT_STOPWORDS

# A token is either a comma-grouped figure ("72,616", "1,234.56") or a run of
# alphanumerics glued by single internal punctuation ("company-operated",
# "374.7", "e&p", "don't"). Everything else separates tokens.
TOKEN_PATTERN = re.compile(
    r"\d{1,3}(?:,\d{3})+(?:\.\d+)?"
    r"|[A-Za-z0-9]+(?:['’&./-][A-Za-z0-9]+)*"
)

_TERMINATOR = re.compile(r"[.!?]+")

# Words that end with a period without ending a sentence.
ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof inc corp co ltd llc llp plc no nos approx etc vs
    e.g i.e u.s u.k jan feb mar apr jun jul aug sep sept oct nov dec st
    """.split()
)


def tokenize(text: str, base_offset: int = 0) -> tuple[Token, ...]:
    return tuple(
        Token(m.group(0), base_offset + m.start(), base_offset + m.end())
        for m in TOKEN_PATTERN.finditer(text)
    )


def content_tokens(
    tokens: tuple[Token, ...], stopwords: Collection[str] = DEFAULT_STOPWORDS
) -> tuple[Token, ...]:
    out = []
    for tok in tokens:
        folded = tok.text.casefold()
        if folded not in stopwords:
            out.append(Token(folded, tok.start, tok.end))
    return tuple(out)


def _is_boundary(text: str, end: int) -> bool:
    """Decide whether the terminator run ending at ``end`` closes a sentence."""
    # Decimal point or intra-token period: next char is not a separator.
    if end < len(text) and not text[end].isspace():
        return False
    # Abbreviation guard: look at the word directly before the terminator.
    word_start = end - 1
    while word_start > 0 and (text[word_start - 1].isalnum() or text[word_start - 1] == "."):
        word_start -= 1
    word = text[word_start : end - 1].casefold().rstrip(".")
    if word in ABBREVIATIONS:
        return False
    # Single capital letter before the period reads as an initial ("J. Smith").
    if len(word) == 1 and word.isalpha():
        return False
    return True


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Return (start, end) spans of sentences within a prose paragraph.

    Terminator punctuation and hard newlines close sentences; an
    abbreviation guard keeps "Inc." and friends from splitting.
    """
    spans: list[tuple[int, int]] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            spans.append((start, i))
            start = i + 1
            i += 1
            continue
        m = _TERMINATOR.match(text, i)
        if m is not None:
            if _is_boundary(text, m.end()):
                spans.append((start, m.end()))
                start = m.end()
            i = m.end()
            continue
        i += 1
    if start < n:
        spans.append((start, n))
    # Trim whitespace and drop blank spans.
    trimmed = []
    for s, e in spans:
        while s < e and text[s].isspace():
            s += 1
        while e > s and text[e - 1].isspace():
            e -= 1
        if e > s:
            trimmed.append((s, e))
    return trimmed


def segment_and_tokenize(
    doc: Document, stopwords: Collection[str] = DEFAULT_STOPWORDS
) -> Document:
    """Populate sentences and token counts over the prose paragraphs."""
    sentences: list[Sentence] = []
    total = 0
    for para in doc.paragraphs:
        if para.kind is not ParagraphKind.PROSE:
            continue
        for span in split_sentences(para.text):
            s, e = span
            toks = tokenize(para.text[s:e], base_offset=s)
            ctoks = content_tokens(toks, stopwords)
            total += len(ctoks)
            sentences.append(
                Sentence(
                    index=len(sentences),
                    paragraph_index=para.index,
                    char_span=span,
                    tokens=toks,
                    content_tokens=ctoks,
                )
            )
    return replace(doc, sentences=tuple(sentences), total_content_tokens=total)
