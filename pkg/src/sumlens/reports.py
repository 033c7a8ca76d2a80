"""Analysis bundle: attribution rows, extractiveness and numeric tables,
position histograms, a data dictionary, and the run manifest.

Every writer here is deterministic: fixed column orders, fixed float
formats, newline-terminated CSV, sorted JSON keys. Equal inputs produce
byte-identical artifacts, which the pipeline's golden-snapshot checks rely
on.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .corpus.model import Document
from .gateway.summarize import SummaryRecord
from .numerics.matching import (
    NumberIndex,
    SourceType,
    build_number_index,
    classify_source_type,
    dedup_magnitudes,
    word_count,
)
from .numerics.mentions import extract_numbers
from .trace.classify import SentenceAttribution, SentenceClass, classify_document
from .trace.embeddings import EmbeddingProvider
from .trace.histogram import position_histogram
from .corpus.segment import segment_and_tokenize
from .corpus.model import Paragraph, ParagraphKind

MANIFEST_SCHEMA_VERSION = 1


def summary_as_document(record: SummaryRecord) -> Document:
    doc = Document(
        filing_id=record.summary_id,
        paragraphs=(
            Paragraph(index=0, kind=ParagraphKind.PROSE, text=record.summary_text),
        ),
    )
    return segment_and_tokenize(doc)


@dataclass
class SummaryAnalysis:
    record: SummaryRecord
    attributions: list[SentenceAttribution]
    source_types: dict[str, SourceType]  # mention span key -> type
    mention_count: int
    words: int


def group_key(record: SummaryRecord) -> tuple[str, str, str]:
    variant = "shuffled" if record.shuffled else "original"
    return (record.model_name, record.prompt_kind, variant)


def analyze_summary(
    record: SummaryRecord,
    report: Document,
    index: NumberIndex,
    embed: EmbeddingProvider | None = None,
) -> SummaryAnalysis:
    summary_doc = summary_as_document(record)
    attributions = classify_document(summary_doc, report, embed)
    mentions = extract_numbers(record.summary_text)
    source_types = {
        f"{m.char_span[0]}:{m.char_span[1]}": classify_source_type(m, index)
        for m in mentions
    }
    return SummaryAnalysis(
        record=record,
        attributions=attributions,
        source_types=source_types,
        mention_count=len(mentions),
        words=word_count(record.summary_text),
    )


# ------------------------------------------------------------------ writers

def write_attributions_jsonl(path: Path, analyses: list[SummaryAnalysis]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for a in analyses:
            for attr in a.attributions:
                fh.write(json.dumps(attr.to_dict(a.record.summary_id), sort_keys=True) + "\n")


def write_mentions_jsonl(path: Path, analyses: list[SummaryAnalysis]) -> None:
    """One record per extracted summary number, with its source type."""
    with open(path, "w", encoding="utf-8") as fh:
        for a in sorted(analyses, key=lambda x: x.record.summary_id):
            for m in extract_numbers(a.record.summary_text):
                span_key = f"{m.char_span[0]}:{m.char_span[1]}"
                fh.write(
                    json.dumps(
                        {
                            "summary_id": a.record.summary_id,
                            "raw_text": m.raw_text,
                            "value": str(m.value),
                            "scale": m.scale.value,
                            "char_span": list(m.char_span),
                            "from_suffix": m.from_suffix,
                            "source_type": a.source_types[span_key].value,
                        },
                        sort_keys=True,
                    )
                    + "\n"
                )


def write_extractiveness_csv(path: Path, analyses: list[SummaryAnalysis]) -> None:
    groups: dict[tuple[str, str, str], list[SentenceAttribution]] = {}
    for a in analyses:
        groups.setdefault(group_key(a.record), []).extend(a.attributions)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["model", "prompt", "variant", "n_sentences",
             "count_1_1", "count_2_1", "count_abstractive",
             "pct_1_1", "pct_2_1", "pct_abstractive"]
        )
        for key in sorted(groups):
            attrs = groups[key]
            n = len(attrs)
            c11 = sum(1 for x in attrs if x.sentence_class is SentenceClass.EXTRACTIVE_11)
            c21 = sum(1 for x in attrs if x.sentence_class is SentenceClass.SYNTHESIZING_21)
            cab = n - c11 - c21
            writer.writerow(
                list(key)
                + [n, c11, c21, cab]
                + [f"{100 * c / n:.2f}" if n else "0.00" for c in (c11, c21, cab)]
            )


def write_numeric_types_csv(path: Path, analyses: list[SummaryAnalysis]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["summary_id", "model", "prompt", "variant", "words", "total", "density_pct",
             "count_a", "count_b", "count_c", "count_d",
             "pct_a", "pct_b", "pct_c", "pct_d"]
        )
        for a in sorted(analyses, key=lambda x: x.record.summary_id):
            counts = {t: 0 for t in SourceType}
            for st in a.source_types.values():
                counts[st] += 1
            total = a.mention_count
            density = 100 * total / a.words if a.words else 0.0
            row = [
                a.record.summary_id, a.record.model_name, a.record.prompt_kind,
                "shuffled" if a.record.shuffled else "original",
                a.words, total, f"{density:.2f}",
            ]
            row += [counts[t] for t in SourceType]
            row += [f"{100 * counts[t] / total:.2f}" if total else "0.00" for t in SourceType]
            writer.writerow(row)


def write_summary_stats_csv(
    path: Path,
    analyses: list[SummaryAnalysis],
    reports: dict[str, Document],
    indexes: dict[str, NumberIndex],
) -> None:
    """Per-group means for summaries plus per-report container statistics."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["side", "model", "prompt", "variant", "n", "words_mean",
             "numbers_mean", "density_pct",
             "a_mean", "b_mean", "c_mean", "d_mean",
             "numbers_raw_mean", "numbers_dedup_mean",
             "prose_words", "table_words",
             "refused_pct", "zero_number_pct"]
        )
        groups: dict[tuple[str, str, str], list[SummaryAnalysis]] = {}
        for a in analyses:
            groups.setdefault(group_key(a.record), []).append(a)
        for key in sorted(groups):
            rows = groups[key]
            n = len(rows)
            words = sum(r.words for r in rows) / n
            numbers = sum(r.mention_count for r in rows) / n
            density = 100 * sum(r.mention_count for r in rows) / max(
                sum(r.words for r in rows), 1
            )
            means = []
            for t in SourceType:
                means.append(
                    sum(sum(1 for st in r.source_types.values() if st is t) for r in rows) / n
                )
            refused = 100 * sum(1 for r in rows if r.record.refused) / n
            zero_numbers = 100 * sum(1 for r in rows if r.mention_count == 0) / n
            writer.writerow(
                ["summary"] + list(key)
                + [n, f"{words:.2f}", f"{numbers:.2f}", f"{density:.2f}"]
                + [f"{m:.2f}" for m in means]
                + ["", "", "", ""]
                + [f"{refused:.2f}", f"{zero_numbers:.2f}"]
            )

        # Report side: words, raw and deduplicated number counts, and the
        # prose-only / table-only / both split over distinct magnitudes.
        filing_ids = sorted({a.record.filing_id for a in analyses if a.record.filing_id in reports})
        for filing_id in filing_ids:
            report = reports[filing_id]
            index = indexes[filing_id]
            prose_set = dedup_magnitudes(list(index.prose))
            table_set = dedup_magnitudes(list(index.table))
            a_count = len(prose_set - table_set)
            b_count = len(table_set - prose_set)
            c_count = len(prose_set & table_set)
            raw = len(index.prose) + len(index.table)
            dedup = len(prose_set | table_set)
            words = report.word_count()
            density = 100 * raw / max(words, 1)
            writer.writerow(
                ["report", filing_id, "", "", 1, f"{words:.2f}",
                 f"{raw:.2f}", f"{density:.2f}",
                 f"{a_count:.2f}", f"{b_count:.2f}", f"{c_count:.2f}", "",
                 f"{raw:.2f}", f"{dedup:.2f}",
                 str(report.prose_word_count()), str(report.table_word_count()),
                 "", ""]
            )


def write_position_histogram_csv(
    path: Path, analyses: list[SummaryAnalysis], n_bins: int = 5
) -> None:
    groups: dict[tuple[str, str, str], list[SentenceAttribution]] = {}
    for a in analyses:
        groups.setdefault(group_key(a.record), []).extend(a.attributions)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model", "prompt", "variant", "bin_lo", "bin_hi", "mass"])
        for key in sorted(groups):
            hist = position_histogram(groups[key], n_bins=n_bins)
            for b in hist.bins:
                writer.writerow(
                    list(key) + [f"{b.lo:.4f}", f"{b.hi:.4f}", f"{b.mass:.6f}"]
                )


DATA_DICTIONARY = [
    ("attributions.jsonl", "summary_id", "Identifier of the summary record"),
    ("attributions.jsonl", "sentence_index", "Summary sentence position, from 0"),
    ("attributions.jsonl", "class", "extractive_1_1, synthesizing_2_1, or abstractive"),
    ("attributions.jsonl", "sources", "Report sentence indices backing the sentence"),
    ("attributions.jsonl", "score", "Fragment similarity score of the chosen source(s)"),
    ("attributions.jsonl", "position_fraction", "Source index over report sentence count, mean for pairs"),
    ("mentions.jsonl", "value", "Canonical decimal value of the extracted number"),
    ("mentions.jsonl", "scale", "Unit scale inferred from adjacent words, suffixes, or preambles"),
    ("mentions.jsonl", "source_type", "A=prose only, B=tables only, C=both, D=absent from the report"),
    ("extractiveness.csv", "pct_1_1", "Percent of sentences copied from one report sentence"),
    ("extractiveness.csv", "pct_2_1", "Percent of sentences synthesized from two report sentences"),
    ("extractiveness.csv", "pct_abstractive", "Percent of sentences matched by neither rule"),
    ("numeric_types.csv", "total", "Numeric mentions extracted from the summary"),
    ("numeric_types.csv", "density_pct", "Numbers per word, as a percentage"),
    ("numeric_types.csv", "count_a", "Values found only in report prose"),
    ("numeric_types.csv", "count_b", "Values found only in report tables"),
    ("numeric_types.csv", "count_c", "Values found in both prose and tables"),
    ("numeric_types.csv", "count_d", "Values found nowhere in the report"),
    ("summary_stats.csv", "numbers_raw_mean", "Report-side mention count before deduplication"),
    ("summary_stats.csv", "numbers_dedup_mean", "Distinct canonical magnitudes in the report"),
    ("summary_stats.csv", "prose_words", "Report words in prose paragraphs only"),
    ("summary_stats.csv", "table_words", "Report words inside table cells only"),
    ("summary_stats.csv", "refused_pct", "Percent of summaries that were provider refusals"),
    ("summary_stats.csv", "zero_number_pct", "Percent of summaries containing no numeric values"),
    ("position_histogram.csv", "mass", "Share of attributed sentences sourced in the bin"),
]


def write_data_dictionary(path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["file", "column", "description"])
        for row in DATA_DICTIONARY:
            writer.writerow(row)


# ----------------------------------------------------------------- manifest

def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def update_manifest(out_dir: Path, entries: dict, artifacts: list[Path]) -> Path:
    manifest_path = out_dir / "manifest.json"
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    else:
        manifest = {"schema_version": MANIFEST_SCHEMA_VERSION, "artifacts": {}}
    manifest.update(entries)
    for artifact in artifacts:
        rel = str(artifact.relative_to(out_dir))
        manifest["artifacts"][rel] = sha256_file(artifact)
    manifest["artifacts"] = dict(sorted(manifest["artifacts"].items()))
    manifest_path.write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    return manifest_path


def build_indexes(reports: dict[str, Document]) -> dict[str, NumberIndex]:
    return {fid: build_number_index(doc) for fid, doc in reports.items()}
