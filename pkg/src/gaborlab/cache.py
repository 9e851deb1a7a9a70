"""Content-addressed result cache with atomic writes.

Entries are keyed by a stable hash of the semantic request (command plus
canonicalized configuration), so flag reordering hits the cache.  Payloads
are stored verbatim; a version mismatch or a corrupt entry triggers
recomputation.  Writes go through a temp file and an atomic rename, so
concurrent identical invocations leave exactly one durable entry and every
caller sees the same bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
import time
from typing import Callable

from .serialize import stable_json

__all__ = ["cache_key", "cache_get_or_compute", "default_cache_dir"]

ENV_CACHE_DIR = "GABORLAB_CACHE_DIR"


def default_cache_dir() -> str:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "gaborlab")


def cache_key(command: str, semantic: dict) -> str:
    blob = stable_json({"command": command, "params": semantic})
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def cache_get_or_compute(
    key: str,
    thunk: Callable[[], str],
    version: str,
    cache_dir: str | None = None,
    log=None,
) -> tuple[str, bool]:
    """Return (payload, hit).  ``thunk`` computes the payload string on miss."""
    cache_dir = cache_dir or default_cache_dir()
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, key + ".json")
    log = log or (lambda msg: print(msg, file=sys.stderr))
    if os.path.exists(path):
        try:
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
            if entry.get("version") == version and isinstance(entry.get("payload"), str):
                return entry["payload"], True
            log(f"cache: version mismatch for {key[:12]}, recomputing")
        except (json.JSONDecodeError, OSError) as exc:
            log(f"cache: corrupt entry {key[:12]} ({exc}), recomputing")
    payload = thunk()
    entry = {"version": version, "created": time.time(), "payload": payload}
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return payload, False
