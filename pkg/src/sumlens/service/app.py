"""HTTP facade for the annotation workflow.

JSON over HTTP, stateless handlers, leases instead of locks. Endpoints:

    GET  /tasks/next                  lease and return the next open task
    GET  /reports/{summary_id}/search?q=...   full-report quote search
    POST /tasks/{task_id}/annotation  submit an annotation record
    GET  /progress                    open/done counts and per-label tallies
    GET  /export.csv                  per-group percentages, table layout

Sessions identify themselves with an X-Session header. If a shared token is
configured, every request must carry it in X-Auth-Token.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from ..audit.records import (
    AnnotationLabel,
    AnnotationRecord,
    HALLUCINATION_LABELS,
    LABEL_DEFINITIONS,
    SchemaViolation,
)
from ..audit.stats import hallucination_stats, stats_groups
from ..audit.store import AnnotationStore, NoAnnotations, StaleRevision
from ..corpus.model import Document, ParagraphKind
from ..numerics.matching import NumberIndex, build_number_index, numbers_match
from ..numerics.mentions import ProseRef, extract_numbers
from .queue import AnnotationTask, LeaseExpired, TaskQueue


class UnknownSummary(Exception):
    pass


@dataclass
class ServiceState:
    queue: TaskQueue
    store: AnnotationStore
    reports: dict[str, Document]  # filing_id -> report document
    summary_filings: dict[str, str]  # summary_id -> filing_id
    indexes: dict[str, NumberIndex] = field(default_factory=dict)
    auth_token: str | None = None

    def report_for(self, summary_id: str) -> Document:
        filing_id = self.summary_filings.get(summary_id)
        if filing_id is None or filing_id not in self.reports:
            raise UnknownSummary(summary_id)
        return self.reports[filing_id]

    def index_for(self, filing_id: str) -> NumberIndex:
        if filing_id not in self.indexes:
            self.indexes[filing_id] = build_number_index(self.reports[filing_id])
        return self.indexes[filing_id]


def search_report(state: ServiceState, summary_id: str, query: str) -> list[dict]:
    """Substring search over prose and cells, plus numeric-equivalence hits."""
    report = state.report_for(summary_id)
    results: list[dict] = []
    seen: set[str] = set()

    def add(location: str, quote: str, via: str) -> None:
        if location not in seen:
            seen.add(location)
            results.append({"location": location, "quote": quote, "via": via})

    folded = query.casefold()
    if folded.strip():
        for i in range(len(report.sentences)):
            text = report.sentence_text(i)
            if folded in text.casefold():
                add(f"sentence:{i}", text, "substring")
        for p in report.paragraphs:
            if p.kind is ParagraphKind.TABLE and p.table is not None:
                for cell in p.table.cells:
                    if folded in cell.raw_text.casefold():
                        add(f"cell:{p.index}:{cell.row}:{cell.col}", cell.raw_text, "substring")

    for probe in extract_numbers(query):
        index = state.index_for(state.summary_filings[summary_id])
        for im in index.all_mentions():
            if not numbers_match(probe, im.mention):
                continue
            container = im.mention.container
            if isinstance(container, ProseRef):
                add(
                    f"sentence:{container.sentence_index}",
                    report.sentence_text(container.sentence_index),
                    "numeric",
                )
            else:
                table = report.paragraphs[container.paragraph_index].table
                for cell in table.cells:
                    if cell.row == container.row and cell.col == container.col:
                        add(
                            f"cell:{container.paragraph_index}:{container.row}:{container.col}",
                            cell.raw_text,
                            "numeric",
                        )
    return results


def export_csv(state: ServiceState) -> str:
    """Label-by-group percentage table over finished annotations."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    groups = stats_groups(state.store)
    header = ["label"] + [f"{m}|{p}" for m, p in groups] + ["overall"]
    writer.writerow(header)
    per_group = []
    for m, p in groups:
        per_group.append(hallucination_stats(state.store, model=m, prompt_kind=p))
    try:
        overall = hallucination_stats(state.store)
    except NoAnnotations:
        return buf.getvalue()
    labels = [l for l in AnnotationLabel if l is not AnnotationLabel.PENDING]
    for label in labels:
        row = [label.value]
        for stats in per_group:
            row.append(f"{stats.percentages[label]:.2f}")
        row.append(f"{overall.percentages[label]:.2f}")
        writer.writerow(row)
    total_row = ["total_hallucination_rate"]
    for stats in per_group:
        total_row.append(f"{stats.total_rate:.2f}")
    total_row.append(f"{overall.total_rate:.2f}")
    writer.writerow(total_row)
    return buf.getvalue()


def create_app(state: ServiceState, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="annotation service")

    def denied(request: Request) -> JSONResponse | None:
        if state.auth_token and request.headers.get("X-Auth-Token") != state.auth_token:
            return JSONResponse({"error": "unauthorized"}, status_code=401)
        return None

    def session_of(request: Request) -> str | None:
        return request.headers.get("X-Session") or request.query_params.get("session")

    @app.get("/tasks/next")
    def next_task(request: Request):
        if (resp := denied(request)) is not None:
            return resp
        session = session_of(request)
        if not session:
            return JSONResponse({"error": "missing X-Session"}, status_code=400)
        task = state.queue.next_task(session)
        if task is None:
            return {"exhausted": True, "task": None}
        payload = task.to_dict()
        latest = state.store.latest(task.task_key)
        payload["revision"] = latest.revision if latest else 0
        return {"exhausted": False, "task": payload}

    @app.get("/reports/{summary_id}/search")
    def search(summary_id: str, request: Request, q: str = ""):
        if (resp := denied(request)) is not None:
            return resp
        try:
            return {"results": search_report(state, summary_id, q)}
        except UnknownSummary:
            return JSONResponse({"error": f"unknown summary {summary_id!r}"}, status_code=404)

    @app.post("/tasks/{task_id}/annotation")
    async def submit(task_id: int, request: Request):
        if (resp := denied(request)) is not None:
            return resp
        session = session_of(request)
        if not session:
            return JSONResponse({"error": "missing X-Session"}, status_code=400)
        task = state.queue.get(task_id)
        if task is None:
            return JSONResponse({"error": f"unknown task {task_id}"}, status_code=404)
        try:
            state.queue.check_lease(task_id, session)
        except LeaseExpired as exc:
            return JSONResponse({"error": str(exc), "kind": "lease_expired"}, status_code=410)

        body = await request.json()
        latest = state.store.latest(task.task_key)
        record = AnnotationRecord(
            task_key=task.task_key,
            summary_id=task.summary_id,
            summary_sentence_text=task.summary_sentence_text,
            value=task.value,
            label=AnnotationLabel(body["label"]),
            candidates=task.candidates,
            evidence_quote=body.get("evidence_quote"),
            comment=body.get("comment", ""),
            annotator=body.get("annotator", session),
            revision=int(body.get("revision", (latest.revision if latest else 0) + 1)),
            timestamp=body.get("timestamp", time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())),
            model=task.model,
            prompt_kind=task.prompt_kind,
        )
        try:
            revision = state.store.record_annotation(record)
        except SchemaViolation as exc:
            return JSONResponse({"error": str(exc), "kind": "schema_violation"}, status_code=422)
        except StaleRevision as exc:
            return JSONResponse({"error": str(exc), "kind": "stale_revision"}, status_code=409)
        if record.label is not AnnotationLabel.PENDING:
            state.queue.mark_done(task_id)
        return {"ok": True, "revision": revision, "task_id": task_id}

    @app.get("/progress")
    def progress(request: Request):
        if (resp := denied(request)) is not None:
            return resp
        counts = state.queue.counts()
        tallies = {label.value: 0 for label in AnnotationLabel}
        for record in state.store.snapshot().values():
            tallies[record.label.value] += 1
        hallucinated = sum(
            tallies[label.value] for label in HALLUCINATION_LABELS
        )
        return {"counts": counts, "labels": tallies, "hallucinated": hallucinated}

    @app.get("/export.csv")
    def export(request: Request):
        if (resp := denied(request)) is not None:
            return resp
        return PlainTextResponse(export_csv(state), media_type="text/csv")

    @app.get("/labels")
    def labels(request: Request):
        if (resp := denied(request)) is not None:
            return resp
        return {
            "labels": [
                {"value": label.value, "definition": LABEL_DEFINITIONS.get(label, "")}
                for label in AnnotationLabel
                if label is not AnnotationLabel.PENDING
            ]
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
