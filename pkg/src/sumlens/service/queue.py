"""Annotation task queue with session leases.

One task per (summary id, mention span). Sessions lease the lowest-id open
task; a lease blocks other sessions until it expires or the task is
submitted, so abandoned browser tabs self-heal without losing exclusivity.
All queue state lives behind one lock.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, replace
from pathlib import Path

from ..audit.records import CandidateQuote

DEFAULT_LEASE_SECONDS = 600.0


class LeaseExpired(Exception):
    """The caller no longer holds a live lease on the task."""


@dataclass(frozen=True, slots=True)
class AnnotationTask:
    task_id: int
    task_key: str
    summary_id: str
    filing_id: str
    value: str
    value_span: tuple[int, int]
    summary_sentence_text: str
    candidates: tuple[CandidateQuote, ...]
    model: str = ""
    prompt_kind: str = ""
    done: bool = False

    def to_dict(self) -> dict:
        return {
            "task_id": self.task_id,
            "task_key": self.task_key,
            "summary_id": self.summary_id,
            "filing_id": self.filing_id,
            "value": self.value,
            "value_span": list(self.value_span),
            "summary_sentence_text": self.summary_sentence_text,
            "candidates": [c.to_dict() for c in self.candidates],
            "model": self.model,
            "prompt_kind": self.prompt_kind,
            "done": self.done,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnnotationTask":
        return cls(
            task_id=data["task_id"],
            task_key=data["task_key"],
            summary_id=data["summary_id"],
            filing_id=data["filing_id"],
            value=data["value"],
            value_span=(data["value_span"][0], data["value_span"][1]),
            summary_sentence_text=data["summary_sentence_text"],
            candidates=tuple(CandidateQuote.from_dict(c) for c in data["candidates"]),
            model=data.get("model", ""),
            prompt_kind=data.get("prompt_kind", ""),
            done=data.get("done", False),
        )


@dataclass
class _Lease:
    session: str
    expires_at: float


class TaskQueue:
    def __init__(self, tasks: list[AnnotationTask], lease_seconds: float = DEFAULT_LEASE_SECONDS) -> None:
        self._tasks: dict[int, AnnotationTask] = {t.task_id: t for t in tasks}
        self._leases: dict[int, _Lease] = {}
        self._lease_seconds = lease_seconds
        self._lock = threading.Lock()

    # ------------------------------------------------------------- queries
    def counts(self) -> dict[str, int]:
        with self._lock:
            done = sum(1 for t in self._tasks.values() if t.done)
            return {"done": done, "open": len(self._tasks) - done, "total": len(self._tasks)}

    def get(self, task_id: int) -> AnnotationTask | None:
        with self._lock:
            return self._tasks.get(task_id)

    def all_tasks(self) -> list[AnnotationTask]:
        with self._lock:
            return [self._tasks[k] for k in sorted(self._tasks)]

    # -------------------------------------------------------------- leasing
    def next_task(self, session: str, now: float | None = None) -> AnnotationTask | None:
        """Lowest-id open task not leased to another session, or None."""
        now = time.monotonic() if now is None else now
        with self._lock:
            for task_id in sorted(self._tasks):
                task = self._tasks[task_id]
                if task.done:
                    continue
                lease = self._leases.get(task_id)
                if lease is not None and lease.expires_at > now and lease.session != session:
                    continue
                self._leases[task_id] = _Lease(session, now + self._lease_seconds)
                return task
            return None

    def check_lease(self, task_id: int, session: str, now: float | None = None) -> None:
        now = time.monotonic() if now is None else now
        with self._lock:
            lease = self._leases.get(task_id)
            if lease is None or lease.session != session or lease.expires_at <= now:
                raise LeaseExpired(f"session {session!r} holds no live lease on task {task_id}")

    def mark_done(self, task_id: int) -> None:
        with self._lock:
            task = self._tasks[task_id]
            self._tasks[task_id] = replace(task, done=True)
            self._leases.pop(task_id, None)

    def sync_done(self, finished_task_keys: set[str]) -> None:
        """Mark done every task whose key already has a finished annotation."""
        with self._lock:
            for task_id, task in list(self._tasks.items()):
                if task.task_key in finished_task_keys and not task.done:
                    self._tasks[task_id] = replace(task, done=True)


def dump_tasks(tasks: list[AnnotationTask], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in tasks:
            fh.write(json.dumps(t.to_dict(), sort_keys=True) + "\n")


def load_tasks(path: str | Path) -> list[AnnotationTask]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(AnnotationTask.from_dict(json.loads(line)))
    return out
