from .html_filing import EmptyDocument, MalformedHtml, parse_filing
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
from .segment import (
    TOKEN_PATTERN,
    content_tokens,
    segment_and_tokenize,
    split_sentences,
    tokenize,
)
from .serialize import (
    SCHEMA_VERSION,
    document_from_dict,
    document_to_dict,
    dump_document,
    iter_corpus,
    load_document,
    load_raw_filing,
)
from .stopwords import DEFAULT_STOPWORDS, STOPWORDS_VERSION
from .transforms import BudgetTooSmall, shuffle_document, truncate_to_budget

__all__ = [
    "Cell",
    "Document",
    "Paragraph",
    "ParagraphKind",
    "RawFiling",
    "Sentence",
    "Table",
    "Token",
    "EmptyDocument",
    "MalformedHtml",
    "parse_filing",
    "TOKEN_PATTERN",
    "tokenize",
    "content_tokens",
    "split_sentences",
    "segment_and_tokenize",
    "DEFAULT_STOPWORDS",
    "STOPWORDS_VERSION",
    "BudgetTooSmall",
    "shuffle_document",
    "truncate_to_budget",
    "SCHEMA_VERSION",
    "document_to_dict",
    "document_from_dict",
    "dump_document",
    "load_document",
    "load_raw_filing",
    "iter_corpus",
]
