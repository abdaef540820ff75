"""Content-addressed response cache.

One JSON file per entry under a configurable directory, keyed by a hash
of (backend id, messages, sampling). Only seeded requests are cacheable;
a request without a sampling seed is nondeterministic by construction and
is never cached.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from pathlib import Path

from .types import CompletionRequest, CompletionResult


def cache_key(request: CompletionRequest) -> str | None:
    """Hex digest identifying the request, or None when uncacheable."""
    if request.sampling.seed is None:
        return None
    basis = {
        "backend": request.backend_id,
        "messages": [[m.role, m.text] for m in request.messages],
        "sampling": {
            "temperature": request.sampling.temperature,
            "max_output_tokens": request.sampling.max_output_tokens,
            "seed": request.sampling.seed,
        },
    }
    blob = json.dumps(basis, sort_keys=True, ensure_ascii=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ResponseCache:
    def __init__(self, directory: str | Path | None = None):
        self._dir = Path(directory) if directory is not None else None
        self._mem: dict[str, dict] = {}
        self._lock = threading.Lock()
        if self._dir is not None:
            self._dir.mkdir(parents=True, exist_ok=True)

    def get(self, key: str) -> CompletionResult | None:
        with self._lock:
            payload = self._mem.get(key)
        if payload is None and self._dir is not None:
            path = self._dir / f"{key}.json"
            if path.exists():
                with open(path, "r", encoding="utf-8") as fh:
                    payload = json.load(fh)["result"]
                with self._lock:
                    self._mem[key] = payload
        if payload is None:
            return None
        return CompletionResult(cache_hit=True, **payload)

    def put(self, key: str, request: CompletionRequest, result: CompletionResult) -> None:
        payload = result.payload()
        with self._lock:
            self._mem[key] = payload
        if self._dir is not None:
            record = {
                "key": key,
                "backend": request.backend_id,
                "result": payload,
            }
            path = self._dir / f"{key}.json"
            tmp = path.with_suffix(".json.tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(record, fh, sort_keys=True, indent=1)
                fh.write("\n")
            os.replace(tmp, path)
