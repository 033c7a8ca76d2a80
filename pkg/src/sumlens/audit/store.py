"""Append-only JSONL store for annotation records.

The log is the source of truth: replaying it reconstructs the full state,
and nothing is ever rewritten in place, so the audit trail stays reviewable.
Each task key carries a revision counter; a writer must present exactly
latest+1, which turns every lost race into a visible StaleRevision instead
of a silent overwrite. Writes serialize behind a lock; reads work on
snapshots.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from .records import AnnotationRecord, SchemaViolation, validate_record

STORE_SCHEMA_VERSION = 1


class StaleRevision(Exception):
    """Another writer advanced this record first."""


class NoAnnotations(Exception):
    """No non-pending annotations exist under the requested filter."""


class AnnotationStore:
    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._latest: dict[str, AnnotationRecord] = {}
        if self.path.exists():
            self._replay()

    def _replay(self) -> None:
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                data = json.loads(line)
                record = AnnotationRecord.from_dict(data)
                self._latest[record.task_key] = record

    def record_annotation(self, record: AnnotationRecord) -> int:
        """Validate, enforce the revision discipline, and append. Returns the
        stored revision."""
        validate_record(record)
        with self._lock:
            current = self._latest.get(record.task_key)
            expected = (current.revision + 1) if current else 1
            if record.revision != expected:
                raise StaleRevision(
                    f"task {record.task_key}: expected revision {expected}, "
                    f"got {record.revision}"
                )
            payload = record.to_dict()
            payload["schema_version"] = STORE_SCHEMA_VERSION
            line = json.dumps(payload, sort_keys=True)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
            self._latest[record.task_key] = record
            return record.revision

    def latest(self, task_key: str) -> AnnotationRecord | None:
        with self._lock:
            return self._latest.get(task_key)

    def snapshot(self) -> dict[str, AnnotationRecord]:
        with self._lock:
            return dict(self._latest)

    def __len__(self) -> int:
        with self._lock:
            return len(self._latest)
