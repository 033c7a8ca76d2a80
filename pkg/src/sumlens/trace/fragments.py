"""Greedy fragment alignment and the quadratic-bonus similarity score.

Given summary content tokens S and report content tokens R, the matcher
walks S left to right; at each position it takes the longest S-anchored
token run that occurs contiguously anywhere in R, ties resolving to the
earliest R start, then jumps past it. The score is

    score(S, R) = (1/|S|) * sum over fragments m of (|m| + 0.1 * |m|^2)

where |S| counts content tokens. A sentence that occurs in R as one
contiguous block therefore scores 1 + 0.1*|S|, which is why near-verbatim
copies land well above 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class EmptySummarySentence(Exception):
    """The summary sentence has no content tokens to score."""


@dataclass(frozen=True, slots=True)
class Fragment:
    summary_span: tuple[int, int]
    report_span: tuple[int, int]

    @property
    def length(self) -> int:
        return self.summary_span[1] - self.summary_span[0]


def greedy_fragments(
    summary_tokens: Sequence[str], report_tokens: Sequence[str]
) -> list[Fragment]:
    s, r = summary_tokens, report_tokens
    n, m = len(s), len(r)
    starts: dict[str, list[int]] = {}
    for j, tok in enumerate(r):
        starts.setdefault(tok, []).append(j)

    fragments: list[Fragment] = []
    i = 0
    while i < n:
        best_len = 0
        best_j = -1
        for j in starts.get(s[i], ()):
            k = 1
            while i + k < n and j + k < m and s[i + k] == r[j + k]:
                k += 1
            if k > best_len:  # strictly greater keeps the earliest start on ties
                best_len, best_j = k, j
        if best_len >= 1:
            fragments.append(Fragment((i, i + best_len), (best_j, best_j + best_len)))
            i += best_len
        else:
            i += 1
    return fragments


def fragment_score(fragments: Sequence[Fragment], summary_len: int) -> float:
    if summary_len < 1:
        raise EmptySummarySentence("summary sentence has no content tokens")
    total = 0.0
    for f in fragments:
        length = f.length
        total += length + 0.1 * length * length
    return total / summary_len


def similarity(
    summary_tokens: Sequence[str], report_tokens: Sequence[str]
) -> float:
    """Score one summary sentence against one report sentence (or token span)."""
    if not summary_tokens:
        raise EmptySummarySentence("summary sentence has no content tokens")
    return fragment_score(greedy_fragments(summary_tokens, report_tokens), len(summary_tokens))


@dataclass(frozen=True, slots=True)
class MatchSet:
    """A scored fragment decomposition of one summary sentence against one
    report sentence (or an ordered pair of them, for two-source synthesis)."""

    summary_sentence_index: int
    report_sentence_indices: tuple[int, ...]
    fragments: tuple[Fragment, ...]
    score: float


def match_set(
    summary_sentence_index: int,
    summary_tokens: Sequence[str],
    report_sentence_indices: tuple[int, ...],
    report_tokens: Sequence[str],
) -> MatchSet:
    fragments = tuple(greedy_fragments(summary_tokens, report_tokens))
    return MatchSet(
        summary_sentence_index=summary_sentence_index,
        report_sentence_indices=report_sentence_indices,
        fragments=fragments,
        score=fragment_score(fragments, len(summary_tokens)),
    )
