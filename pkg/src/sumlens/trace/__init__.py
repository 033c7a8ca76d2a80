from .classify import (
    EXTRACTIVE_THRESHOLD,
    PAIR_CANDIDATE_POOL,
    SCORE_TIE_EPS,
    SentenceAttribution,
    SentenceClass,
    classify_document,
    classify_sentence,
)
from .embeddings import (
    EmbeddingProvider,
    EmbeddingUnavailable,
    HashedTfEmbedding,
    cosine,
)
from .fragments import (
    EmptySummarySentence,
    Fragment,
    MatchSet,
    fragment_score,
    greedy_fragments,
    match_set,
    similarity,
)
from .histogram import (
    DEFAULT_BINS,
    HistogramBin,
    PositionHistogram,
    export_histogram_csv,
    position_histogram,
)

__all__ = [
    "EXTRACTIVE_THRESHOLD",
    "PAIR_CANDIDATE_POOL",
    "SCORE_TIE_EPS",
    "SentenceAttribution",
    "SentenceClass",
    "classify_document",
    "classify_sentence",
    "EmbeddingProvider",
    "EmbeddingUnavailable",
    "HashedTfEmbedding",
    "cosine",
    "EmptySummarySentence",
    "Fragment",
    "MatchSet",
    "fragment_score",
    "greedy_fragments",
    "match_set",
    "similarity",
    "DEFAULT_BINS",
    "HistogramBin",
    "PositionHistogram",
    "export_histogram_csv",
    "position_histogram",
]
