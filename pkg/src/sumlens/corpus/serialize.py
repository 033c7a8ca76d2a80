"""JSON (de)serialization for filings and documents.

Field names are stable and carry a schema_version so stored corpora survive
code changes. Round-tripping a document through JSON is an identity.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator

from .model import (
    Cell,
    Document,
    Paragraph,
    ParagraphKind,
    RawFiling,
    Sentence,
    Table,
    Token,
)

SCHEMA_VERSION = 1


def load_raw_filing(path: str | Path) -> RawFiling:
    path = Path(path)
    data = json.loads(path.read_text(encoding="utf-8"))
    missing = {"filing_id", "company", "fiscal_year", "item7_html"} - set(data)
    if missing:
        raise ValueError(f"{path}: missing filing fields {sorted(missing)}")
    return RawFiling(
        filing_id=str(data["filing_id"]),
        company=str(data["company"]),
        fiscal_year=int(data["fiscal_year"]),
        item7_html=str(data["item7_html"]),
        source_path=str(path),
    )


def iter_corpus(corpus_dir: str | Path) -> Iterator[Path]:
    yield from sorted(Path(corpus_dir).glob("*.json"))


def document_to_dict(doc: Document) -> dict:
    paragraphs = []
    for p in doc.paragraphs:
        entry: dict = {"index": p.index, "kind": p.kind.value}
        if p.kind is ParagraphKind.PROSE:
            entry["text"] = p.text
        else:
            entry["table"] = {
                "preamble": p.table.preamble,
                "cells": [
                    {"row": c.row, "col": c.col, "raw_text": c.raw_text}
                    for c in p.table.cells
                ],
            }
        paragraphs.append(entry)
    sentences = [
        {
            "index": s.index,
            "paragraph_index": s.paragraph_index,
            "char_span": list(s.char_span),
            "tokens": [[t.text, t.start, t.end] for t in s.tokens],
            "content_tokens": [[t.text, t.start, t.end] for t in s.content_tokens],
        }
        for s in doc.sentences
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "filing_id": doc.filing_id,
        "company": doc.company,
        "fiscal_year": doc.fiscal_year,
        "paragraphs": paragraphs,
        "sentences": sentences,
        "total_content_tokens": doc.total_content_tokens,
    }


def document_from_dict(data: dict) -> Document:
    paragraphs = []
    for entry in data["paragraphs"]:
        kind = ParagraphKind(entry["kind"])
        if kind is ParagraphKind.PROSE:
            paragraphs.append(
                Paragraph(index=entry["index"], kind=kind, text=entry["text"])
            )
        else:
            table = Table(
                cells=tuple(
                    Cell(row=c["row"], col=c["col"], raw_text=c["raw_text"])
                    for c in entry["table"]["cells"]
                ),
                preamble=entry["table"]["preamble"],
            )
            paragraphs.append(Paragraph(index=entry["index"], kind=kind, table=table))
    sentences = tuple(
        Sentence(
            index=s["index"],
            paragraph_index=s["paragraph_index"],
            char_span=(s["char_span"][0], s["char_span"][1]),
            tokens=tuple(Token(t[0], t[1], t[2]) for t in s["tokens"]),
            content_tokens=tuple(Token(t[0], t[1], t[2]) for t in s["content_tokens"]),
        )
        for s in data["sentences"]
    )
    return Document(
        filing_id=data["filing_id"],
        paragraphs=tuple(paragraphs),
        sentences=sentences,
        total_content_tokens=data["total_content_tokens"],
        company=data.get("company", ""),
        fiscal_year=data.get("fiscal_year", 0),
    )


def dump_document(doc: Document, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(document_to_dict(doc), sort_keys=True, indent=None) + "\n",
        encoding="utf-8",
    )


def load_document(path: str | Path) -> Document:
    return document_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
