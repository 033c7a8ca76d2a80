"""Command-line surface.

Stage boundaries are file-system artifacts under one output directory, so a
pipeline can stop and resume at any stage:

    sumlens ingest CORPUS_DIR --out RUN
    sumlens summarize --out RUN --config gateway.json --model NAME --mode replay
    sumlens analyze --out RUN
    sumlens audit init --out RUN
    sumlens audit serve --out RUN
    sumlens export --out RUN

Exit codes: 0 clean, 1 finished with per-item failures, 2 fatal.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .audit.records import AnnotationLabel
from .audit.store import AnnotationStore, NoAnnotations
from .audit.stats import hallucination_stats
from .corpus.html_filing import EmptyDocument, MalformedHtml, parse_filing
from .corpus.segment import segment_and_tokenize
from .corpus.serialize import (
    dump_document,
    iter_corpus,
    load_document,
    load_raw_filing,
)
from .corpus.transforms import shuffle_document
from .gateway.cassette import CassetteStore
from .gateway.models import load_gateway_config
from .gateway.prompts import PromptKind
from .gateway.summarize import (
    BudgetExceeded,
    Mode,
    ProviderError,
    SummaryRecord,
    build_provider,
    summarize,
)
from .reports import (
    analyze_summary,
    build_indexes,
    update_manifest,
    write_attributions_jsonl,
    write_data_dictionary,
    write_extractiveness_csv,
    write_mentions_jsonl,
    write_numeric_types_csv,
    write_position_histogram_csv,
    write_summary_stats_csv,
)
from .service.app import ServiceState, create_app, export_csv
from .service.queue import TaskQueue, dump_tasks, load_tasks
from .service.tasks import build_tasks


def _document_paths(out_dir: Path) -> list[Path]:
    return sorted((out_dir / "documents").glob("*.json"))


def _load_reports(out_dir: Path, *, variants: bool = False) -> dict[str, "object"]:
    reports = {}
    for path in _document_paths(out_dir):
        if (".shuffled-" in path.name) != variants:
            continue
        doc = load_document(path)
        key = path.stem if variants else doc.filing_id
        reports[key] = doc
    return reports


def _load_summaries(out_dir: Path) -> list[SummaryRecord]:
    path = out_dir / "summaries.jsonl"
    if not path.exists():
        return []
    records = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(SummaryRecord.from_dict(json.loads(line)))
    return records


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None, help="Gateway config file.")
@click.option("--seed", "seeds", type=int, multiple=True, help="Shuffle seed(s).")
@click.option("--bins", type=int, default=5, show_default=True, help="Histogram bin count.")
@click.option("--mode", type=click.Choice([m.value for m in Mode]), default="replay", show_default=True)
@click.pass_context
def main(ctx, config_path, seeds, bins, mode):
    ctx.ensure_object(dict)
    ctx.obj.update(config=config_path, seeds=list(seeds), bins=bins, mode=mode)


@main.command()
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--seed", "seeds", type=int, multiple=True, help="Extra shuffle seeds.")
@click.pass_context
def ingest(ctx, corpus_dir, out_dir, seeds):
    """Parse filings into documents plus shuffled variants per seed."""
    out = Path(out_dir)
    (out / "documents").mkdir(parents=True, exist_ok=True)
    seeds = list(seeds) or ctx.obj.get("seeds", [])
    errors = []
    written = []
    seen_ids = set()
    for path in iter_corpus(corpus_dir):
        try:
            raw = load_raw_filing(path)
            if raw.filing_id in seen_ids:
                raise ValueError(f"duplicate filing_id {raw.filing_id!r}")
            seen_ids.add(raw.filing_id)
            doc = segment_and_tokenize(parse_filing(raw))
        except (EmptyDocument, MalformedHtml, ValueError, json.JSONDecodeError) as exc:
            errors.append({"path": str(path), "error": str(exc)})
            click.echo(f"error: {path}: {exc}", err=True)
            continue
        target = out / "documents" / f"{doc.filing_id}.json"
        dump_document(doc, target)
        written.append(target)
        for seed in seeds:
            variant = shuffle_document(doc, seed)
            vpath = out / "documents" / f"{doc.filing_id}.shuffled-{seed}.json"
            dump_document(variant, vpath)
            written.append(vpath)
    if errors:
        (out / "ingest_errors.jsonl").write_text(
            "".join(json.dumps(e, sort_keys=True) + "\n" for e in errors),
            encoding="utf-8",
        )
    update_manifest(
        out,
        {"corpus": str(corpus_dir), "seeds": sorted(seeds)},
        written + ([out / "ingest_errors.jsonl"] if errors else []),
    )
    click.echo(f"ingested {len(seen_ids)} filings, {len(errors)} errors, seeds={sorted(seeds)}")
    sys.exit(1 if errors else 0)


@main.command(name="summarize")
@click.option("--out", "out_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--model", "model_name", required=True, help="Model name from the config.")
@click.option("--prompt", "prompt_kind", type=click.Choice([k.value for k in PromptKind]), default="simple", show_default=True)
@click.option("--mode", type=click.Choice([m.value for m in Mode]), default=None)
@click.option("--shuffled/--original", default=False)
@click.option("--seed", type=int, default=None, help="Which shuffled variant to use.")
@click.option("--cassettes", "cassette_dir", type=click.Path(), default=None)
@click.pass_context
def summarize_cmd(ctx, out_dir, config_path, model_name, prompt_kind, mode, shuffled, seed, cassette_dir):
    """Produce summary records for every ingested document."""
    out = Path(out_dir)
    config_path = config_path or ctx.obj.get("config")
    if not config_path:
        raise click.UsageError("a gateway config is required (--config)")
    gateway = load_gateway_config(config_path)
    if model_name not in gateway.models:
        raise click.UsageError(f"model {model_name!r} not in config")
    model = gateway.models[model_name]
    mode = Mode(mode or ctx.obj.get("mode", "replay"))
    cassettes = CassetteStore(cassette_dir or out / "cassettes")
    provider = None
    if mode is not Mode.REPLAY:
        provider = build_provider(
            model.provider_id, gateway.providers, base_dir=Path(config_path).parent
        )
    if shuffled and seed is None:
        raise click.UsageError("--shuffled requires --seed")

    failures = 0
    records = []
    for path in _document_paths(out):
        is_variant = ".shuffled-" in path.name
        if is_variant != shuffled:
            continue
        if shuffled and not path.name.endswith(f".shuffled-{seed}.json"):
            continue
        doc = load_document(path)
        try:
            record = summarize(
                doc, model, PromptKind(prompt_kind), mode, cassettes, provider,
                shuffled=shuffled, seed=seed,
                token_ratio=gateway.token_ratio, safety_margin=gateway.safety_margin,
            )
        except (BudgetExceeded, ProviderError) as exc:
            click.echo(f"error: {doc.filing_id}: {exc}", err=True)
            failures += 1
            continue
        records.append(record)

    summaries_path = out / "summaries.jsonl"
    existing = {r.summary_id: r for r in _load_summaries(out)}
    for r in records:
        existing[r.summary_id] = r
    with open(summaries_path, "w", encoding="utf-8") as fh:
        for sid in sorted(existing):
            fh.write(json.dumps(existing[sid].to_dict(), sort_keys=True) + "\n")
    update_manifest(
        out,
        {"model_prompt_matrix": sorted({(r.model_name, r.prompt_kind) for r in existing.values()})},
        [summaries_path],
    )
    click.echo(f"wrote {len(records)} summaries ({failures} failures) via {mode.value}")
    sys.exit(1 if failures else 0)


@main.command()
@click.option("--out", "out_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--bins", type=int, default=None)
@click.option("--against", type=click.Choice(["seen", "original"]), default="seen", show_default=True,
              help="Attribute against the variant the model saw, or always the original.")
@click.pass_context
def analyze(ctx, out_dir, bins, against):
    """Emit extractiveness, numeric-type, and position statistics."""
    out = Path(out_dir)
    bins = bins or ctx.obj.get("bins", 5)
    summaries = _load_summaries(out)
    if not summaries:
        click.echo("error: no summaries to analyze", err=True)
        sys.exit(2)
    originals = _load_reports(out, variants=False)
    variants = _load_reports(out, variants=True)

    skipped = 0
    analyses = []
    report_pool = {}
    for record in summaries:
        if record.shuffled and against == "seen":
            key = f"{record.filing_id}.shuffled-{record.seed}"
            report = variants.get(key)
        else:
            key = record.filing_id
            report = originals.get(record.filing_id)
        if report is None:
            click.echo(f"warning: no report for {record.summary_id}, skipped", err=True)
            skipped += 1
            continue
        report_pool[key] = report
        analyses.append((record, key, report))

    indexes = build_indexes(report_pool)
    results = [
        analyze_summary(record, report, indexes[key]) for record, key, report in analyses
    ]

    analysis_dir = out / "analysis"
    analysis_dir.mkdir(exist_ok=True)
    artifacts = []
    path = analysis_dir / "attributions.jsonl"
    write_attributions_jsonl(path, results)
    artifacts.append(path)
    path = analysis_dir / "mentions.jsonl"
    write_mentions_jsonl(path, results)
    artifacts.append(path)
    path = analysis_dir / "extractiveness.csv"
    write_extractiveness_csv(path, results)
    artifacts.append(path)
    path = analysis_dir / "numeric_types.csv"
    write_numeric_types_csv(path, results)
    artifacts.append(path)
    path = analysis_dir / "summary_stats.csv"
    originals_only = {fid: doc for fid, doc in report_pool.items() if fid in originals}
    write_summary_stats_csv(path, results, originals_only, indexes)
    artifacts.append(path)
    path = analysis_dir / "position_histogram.csv"
    write_position_histogram_csv(path, results, n_bins=bins)
    artifacts.append(path)
    path = analysis_dir / "data_dictionary.csv"
    write_data_dictionary(path)
    artifacts.append(path)

    update_manifest(out, {"bins": bins, "against": against}, artifacts)
    click.echo(f"analyzed {len(results)} summaries ({skipped} skipped)")
    sys.exit(1 if skipped else 0)


@main.group()
def audit():
    """Annotation queue management and hallucination statistics."""


@audit.command(name="init")
@click.option("--out", "out_dir", type=click.Path(exists=True, file_okay=False), required=True)
def audit_init(out_dir):
    """Build the annotation task queue from summary numeric mentions."""
    out = Path(out_dir)
    summaries = _load_summaries(out)
    if not summaries:
        click.echo("error: no summaries; run summarize first", err=True)
        sys.exit(2)
    reports = _load_reports(out, variants=False)
    tasks = build_tasks(summaries, reports)
    audit_dir = out / "audit"
    audit_dir.mkdir(exist_ok=True)
    tasks_path = audit_dir / "tasks.jsonl"
    dump_tasks(tasks, tasks_path)
    store_path = audit_dir / "annotations.jsonl"
    store_path.touch()
    update_manifest(out, {"audit_tasks": len(tasks)}, [tasks_path])
    click.echo(f"queued {len(tasks)} annotation tasks")


@audit.command(name="stats")
@click.option("--out", "out_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--model", default=None)
@click.option("--prompt", "prompt_kind", default=None)
def audit_stats(out_dir, model, prompt_kind):
    """Print per-label hallucination percentages."""
    store = AnnotationStore(Path(out_dir) / "audit" / "annotations.jsonl")
    try:
        stats = hallucination_stats(store, model=model, prompt_kind=prompt_kind)
    except NoAnnotations as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(f"annotated: {stats.total_annotated}")
    for label, pct in sorted(stats.percentages.items(), key=lambda kv: kv[0].value):
        click.echo(f"{label.value}: {stats.counts[label]} ({pct:.2f}%)")
    click.echo(f"total hallucination rate: {stats.total_rate:.2f}%")


@audit.command(name="serve")
@click.option("--out", "out_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8470, show_default=True)
@click.option("--token", default=None, help="Shared auth token (X-Auth-Token).")
@click.option("--lease-seconds", type=float, default=600.0, show_default=True)
@click.option("--ui-dir", type=click.Path(), default=None, help="Static UI assets to mount at /ui.")
def audit_serve(out_dir, host, port, token, lease_seconds, ui_dir):
    """Serve the annotation HTTP API (and the UI, if built)."""
    import uvicorn

    state = load_service_state(Path(out_dir), token=token, lease_seconds=lease_seconds)
    app = create_app(state, static_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


def load_service_state(out: Path, token: str | None = None, lease_seconds: float = 600.0) -> ServiceState:
    tasks_path = out / "audit" / "tasks.jsonl"
    if not tasks_path.exists():
        raise click.UsageError("no task queue; run `sumlens audit init` first")
    tasks = load_tasks(tasks_path)
    store = AnnotationStore(out / "audit" / "annotations.jsonl")
    queue = TaskQueue(tasks, lease_seconds=lease_seconds)
    queue.sync_done(
        {k for k, r in store.snapshot().items() if r.label is not AnnotationLabel.PENDING}
    )
    reports = _load_reports(out, variants=False)
    summary_filings = {r.summary_id: r.filing_id for r in _load_summaries(out)}
    return ServiceState(
        queue=queue,
        store=store,
        reports=reports,
        summary_filings=summary_filings,
        auth_token=token,
    )


@main.command()
@click.option("--out", "out_dir", type=click.Path(exists=True, file_okay=False), required=True)
def export(out_dir):
    """Write the hallucination-statistics CSV from the annotation store."""
    out = Path(out_dir)
    state = load_service_state(out)
    csv_text = export_csv(state)
    path = out / "audit" / "hallucination_stats.csv"
    path.write_text(csv_text, encoding="utf-8")
    update_manifest(out, {}, [path])
    click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
