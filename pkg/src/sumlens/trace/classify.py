"""Per-sentence source attribution.

A summary sentence is either copied from one report sentence, synthesized
from two, or neither:

  * single-source: best single-sentence similarity exceeds the threshold;
    exact score ties break by embedding cosine against the summary sentence;
  * two-source: no single sentence clears the threshold, but some pair does
    when the pair's content tokens are concatenated in document order and
    scored with the same formula;
  * abstractive: neither rule fires.

Pair search is pruned to the top-K single-sentence candidates because true
two-source origins almost always rank high individually.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass

from ..corpus.model import Document
from .embeddings import EmbeddingProvider, EmbeddingUnavailable, HashedTfEmbedding, cosine
from .fragments import EmptySummarySentence, similarity

logger = logging.getLogger(__name__)

EXTRACTIVE_THRESHOLD = 0.8
SCORE_TIE_EPS = 1e-9
PAIR_CANDIDATE_POOL = 50


class SentenceClass(str, enum.Enum):
    EXTRACTIVE_11 = "extractive_1_1"
    SYNTHESIZING_21 = "synthesizing_2_1"
    ABSTRACTIVE = "abstractive"


@dataclass(frozen=True, slots=True)
class SentenceAttribution:
    summary_sentence_index: int
    sentence_class: SentenceClass
    sources: tuple[int, ...]
    score: float
    position_fraction: float | None

    def to_dict(self, summary_id: str = "") -> dict:
        return {
            "summary_id": summary_id,
            "sentence_index": self.summary_sentence_index,
            "class": self.sentence_class.value,
            "sources": list(self.sources),
            "score": self.score,
            "position_fraction": self.position_fraction,
        }


def _tie_break(
    candidates: list[int],
    summary_text: str,
    report: Document,
    embed: EmbeddingProvider,
) -> int:
    try:
        s_vec = embed.embed(summary_text)
        scored = [
            (cosine(s_vec, embed.embed(report.sentence_text(idx))), -idx)
            for idx in candidates
        ]
    except EmbeddingUnavailable:
        logger.warning("embedding provider unavailable; using lexical fallback")
        fallback = HashedTfEmbedding()
        s_vec = fallback.embed(summary_text)
        scored = [
            (cosine(s_vec, fallback.embed(report.sentence_text(idx))), -idx)
            for idx in candidates
        ]
    best = max(range(len(candidates)), key=lambda i: scored[i])
    return candidates[best]


def classify_sentence(
    s_idx: int,
    summary: Document,
    report: Document,
    embed: EmbeddingProvider | None = None,
    *,
    threshold: float = EXTRACTIVE_THRESHOLD,
    pair_pool: int = PAIR_CANDIDATE_POOL,
) -> SentenceAttribution:
    if embed is None:
        embed = HashedTfEmbedding()
    sentence = summary.sentences[s_idx]
    s_tokens = sentence.content_texts
    if not s_tokens:
        raise EmptySummarySentence(f"summary sentence {s_idx} has no content tokens")

    n_report = len(report.sentences)
    scores = [
        similarity(s_tokens, report.sentences[r].content_texts)
        for r in range(n_report)
    ]
    best_single = max(scores, default=0.0)

    if best_single > threshold:
        tied = [r for r, sc in enumerate(scores) if abs(sc - best_single) <= SCORE_TIE_EPS]
        source = tied[0] if len(tied) == 1 else _tie_break(
            tied, summary.sentence_text(s_idx), report, embed
        )
        return SentenceAttribution(
            summary_sentence_index=s_idx,
            sentence_class=SentenceClass.EXTRACTIVE_11,
            sources=(source,),
            score=scores[source],
            position_fraction=source / n_report if n_report else None,
        )

    # Pair search over the strongest single-sentence candidates.
    pool = sorted(range(n_report), key=lambda r: (-scores[r], r))[:pair_pool]
    best_pair: tuple[int, int] | None = None
    best_pair_score = 0.0
    for a, b in itertools.combinations(sorted(pool), 2):
        combined = report.sentences[a].content_texts + report.sentences[b].content_texts
        pair_score = similarity(s_tokens, combined)
        if pair_score > best_pair_score + SCORE_TIE_EPS:
            best_pair_score = pair_score
            best_pair = (a, b)

    if best_pair is not None and best_pair_score > threshold:
        a, b = best_pair
        return SentenceAttribution(
            summary_sentence_index=s_idx,
            sentence_class=SentenceClass.SYNTHESIZING_21,
            sources=(a, b),
            score=best_pair_score,
            position_fraction=(a / n_report + b / n_report) / 2 if n_report else None,
        )

    return SentenceAttribution(
        summary_sentence_index=s_idx,
        sentence_class=SentenceClass.ABSTRACTIVE,
        sources=(),
        score=best_single,
        position_fraction=None,
    )


def classify_document(
    summary: Document,
    report: Document,
    embed: EmbeddingProvider | None = None,
    **kwargs,
) -> list[SentenceAttribution]:
    """Attribute every summary sentence that has content tokens."""
    out = []
    for s in summary.sentences:
        if not s.content_tokens:
            continue
        out.append(classify_sentence(s.index, summary, report, embed, **kwargs))
    return out
