"""Record/replay storage for provider calls.

One JSON file per deterministic key; replaying from cassettes makes every
downstream analysis hermetic and free. Writes go through a temp file and an
atomic rename, so concurrent recorders end with the last complete write per
key rather than a torn file.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

logger = logging.getLogger(__name__)


class CassetteMiss(Exception):
    """Replay requested a key that was never recorded."""


def cassette_key(
    filing_id: str,
    model_name: str,
    prompt_kind: str,
    shuffled: bool = False,
    seed: int | None = None,
) -> str:
    payload = json.dumps(
        {
            "filing_id": filing_id,
            "model_name": model_name,
            "prompt_kind": prompt_kind,
            "shuffled": shuffled,
            "seed": seed,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:24]


class CassetteStore:
    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def exists(self, key: str) -> bool:
        return self.path_for(key).exists()

    def save(self, key: str, request: dict, response: dict) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        if self.exists(key):
            logger.info("overwriting cassette %s (last complete write wins)", key)
        payload = json.dumps(
            {"key": key, "request": request, "response": response},
            sort_keys=True,
            indent=2,
        )
        tmp = self.path_for(key).with_suffix(".json.tmp")
        tmp.write_text(payload + "\n", encoding="utf-8")
        os.replace(tmp, self.path_for(key))

    def load(self, key: str) -> dict:
        path = self.path_for(key)
        if not path.exists():
            raise CassetteMiss(f"no cassette for key {key}")
        return json.loads(path.read_text(encoding="utf-8"))
