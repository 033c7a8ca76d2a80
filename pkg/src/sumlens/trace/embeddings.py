"""Pluggable sentence embeddings with a deterministic lexical fallback.

Source attribution only needs embeddings to break exact score ties, so the
contract is small: an object with ``embed(text) -> vector`` whose cosine
ranking is meaningful. The default provider hashes content tokens into a
fixed-size TF vector; it needs no model downloads, is stable across
processes, and is safe for concurrent calls.
"""

from __future__ import annotations

import hashlib
import math
from typing import Protocol, Sequence

from ..corpus.segment import content_tokens, tokenize


class EmbeddingUnavailable(Exception):
    """The configured provider cannot produce vectors right now."""


class EmbeddingProvider(Protocol):
    def embed(self, text: str) -> Sequence[float]: ...


def _bucket(token: str, dim: int) -> int:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % dim


class HashedTfEmbedding:
    """TF-weighted bag of content tokens, hashed into ``dim`` buckets."""

    def __init__(self, dim: int = 512) -> None:
        self.dim = dim

    def embed(self, text: str) -> Sequence[float]:
        vec = [0.0] * self.dim
        for tok in content_tokens(tokenize(text)):
            vec[_bucket(tok.text, self.dim)] += 1.0
        return vec


def cosine(a: Sequence[float], b: Sequence[float]) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)
