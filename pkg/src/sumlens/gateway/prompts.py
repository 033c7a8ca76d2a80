"""Prompt templates for summary generation.

Five fixed variants: a plain request, three explicit nudges toward numbers
and tables, and a step-by-step variant that spells out how numeric values
should be used. The wording is frozen; rendering only substitutes the
document into the ``...`` slot, nothing else, so any two runs differ solely
in their input text.
"""

from __future__ import annotations

import enum

from ..corpus.model import Document, ParagraphKind


class PromptKind(str, enum.Enum):
    SIMPLE = "simple"
    NUM = "num"
    TAB = "tab"
    NUMTAB = "numtab"
    COT = "cot"


SLOT = "\n...\n"

SIMPLE_TEMPLATE = """Summarize the following report.

MD&A:

---
The following is an MD&A report:

...

Please summarize this report."""

NUM_TEMPLATE = """Summarize the following report.

MD&A:
...

Please include specific numeric values and key statistics."""

TAB_TEMPLATE = """Summarize the following report.

MD&A:
...

Please include the numeric values in the tables."""

NUMTAB_TEMPLATE = """Summarize the following report.

MD&A:
...

Please include specific numeric values and key statistics. Please include the numeric values in the tables."""

COT_TEMPLATE = """Summarize the following report.

MD&A:
...

Let's generate the summary step by step.

1. Read through the entire MD&A report carefully to understand the context.
2. Identify and extract the key topics and insights discussed in the report.
3. Pay attention to any tables presenting numeric data, such as income statements, balance sheets, or cash flow statements.
4. When including numbers in the summary, ensure they are:
    a) Explicitly stated values from the original report (do not fabricate numbers).
    b) Stemmed from step-by-step verified calculations.
    c) Correctly rounded.
    d) Appropriately represented with clear context from the original source.
5. Synthesize the extracted information and numbers into a concise summary that flows logically.

Summary:
"""

TEMPLATES = {
    PromptKind.SIMPLE: SIMPLE_TEMPLATE,
    PromptKind.NUM: NUM_TEMPLATE,
    PromptKind.TAB: TAB_TEMPLATE,
    PromptKind.NUMTAB: NUMTAB_TEMPLATE,
    PromptKind.COT: COT_TEMPLATE,
}


def document_text(doc: Document) -> str:
    """The document as the prompt sees it: prose paragraphs verbatim, tables
    as raw cell text joined row-major."""
    parts = []
    for p in doc.paragraphs:
        if p.kind is ParagraphKind.PROSE:
            parts.append(p.text)
        elif p.table is not None:
            parts.append(p.table.joined_text())
    return "\n\n".join(parts)


def render_prompt(kind: PromptKind, doc: Document) -> str:
    """Byte-exact template instantiation with the document in the slot."""
    template = TEMPLATES[kind]
    return template.replace(SLOT, "\n" + document_text(doc) + "\n", 1)
