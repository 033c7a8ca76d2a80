"""Source-position distributions for attributed summary sentences."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .classify import SentenceAttribution, SentenceClass

DEFAULT_BINS = 5


@dataclass(frozen=True, slots=True)
class HistogramBin:
    lo: float
    hi: float
    mass: float


@dataclass(frozen=True, slots=True)
class PositionHistogram:
    bins: tuple[HistogramBin, ...]
    attributed_count: int

    @property
    def empty(self) -> bool:
        return self.attributed_count == 0


def position_histogram(
    attributions: Iterable[SentenceAttribution],
    n_bins: int = DEFAULT_BINS,
    *,
    include_pairs: bool = False,
) -> PositionHistogram:
    """Histogram of source position fractions over attributed sentences.

    Mass is normalized over attributed sentences only; if every sentence is
    abstractive the histogram comes back empty (flagged, not an error).
    """
    if n_bins < 2:
        raise ValueError("n_bins must be at least 2")
    wanted = {SentenceClass.EXTRACTIVE_11}
    if include_pairs:
        wanted.add(SentenceClass.SYNTHESIZING_21)
    fractions = [
        a.position_fraction
        for a in attributions
        if a.sentence_class in wanted and a.position_fraction is not None
    ]
    counts = [0] * n_bins
    for f in fractions:
        counts[min(int(f * n_bins), n_bins - 1)] += 1
    total = len(fractions)
    bins = tuple(
        HistogramBin(
            lo=k / n_bins,
            hi=(k + 1) / n_bins,
            mass=(counts[k] / total) if total else 0.0,
        )
        for k in range(n_bins)
    )
    return PositionHistogram(bins=bins, attributed_count=total)


def export_histogram_csv(hist: PositionHistogram, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["bin_lo", "bin_hi", "mass"])
        for b in hist.bins:
            writer.writerow([f"{b.lo:.4f}", f"{b.hi:.4f}", f"{b.mass:.6f}"])
