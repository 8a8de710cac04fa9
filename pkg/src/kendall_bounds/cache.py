"""Single-file JSON disk cache for expensive intermediate data.

One file per (kind, n) holding a schema version, the payload, and a content
checksum.  Potentially large integers inside payloads are stored as decimal
strings by their producers, so consumers that parse JSON with 53-bit floats
cannot silently corrupt them.  A checksum or version mismatch is treated as
a miss and triggers recomputation, never a partial read.  Writes go through
a temp file and an atomic rename, so concurrent readers only ever see
complete entries.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

SCHEMA_VERSION = 1
ENV_VAR = "KENDALL_BOUNDS_CACHE"
DEFAULT_DIR = ".kb-cache"

_KINDS = {
    "character_table",
    "class_full",
    "class_psi",
    "class_theta",
    "t_coefficients",
}


def _payload_checksum(payload) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


class Cache:
    def __init__(self, directory: str | os.PathLike | None = None):
        if directory is None:
            directory = os.environ.get(ENV_VAR) or DEFAULT_DIR
        self.directory = Path(directory)

    def _path(self, kind: str, n: int) -> Path:
        if kind not in _KINDS:
            raise ValueError(f"unknown cache kind {kind!r}")
        return self.directory / f"{kind}-n{n}-v{SCHEMA_VERSION}.json"

    def load(self, kind: str, n: int):
        """Payload for (kind, n), or None on miss/version/checksum mismatch."""
        path = self._path(kind, n)
        try:
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None
        if entry.get("schema_version") != SCHEMA_VERSION:
            return None
        payload = entry.get("payload")
        if payload is None or entry.get("checksum") != _payload_checksum(payload):
            return None
        return payload

    def store(self, kind: str, n: int, payload) -> None:
        """Write-once per key: an existing valid entry is left untouched."""
        path = self._path(kind, n)
        if self.load(kind, n) is not None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {
            "schema_version": SCHEMA_VERSION,
            "kind": kind,
            "n": n,
            "payload": payload,
            "checksum": _payload_checksum(payload),
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(entry, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
