"""Content-addressed JSON cache for computed invariants.

Each record lives in ``<dir>/<sha256>.json`` where the hash covers the kind,
the canonical parameter string and the tool version. Writes go to a
temporary file that is renamed into place, so readers never see a partial
record and concurrent writers of the same key are harmless.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

from .errors import CorruptRecord

__all__ = ["KINDS", "InvariantRecord", "Cache", "cache_key", "canonical_params", "default_cache"]

KINDS = ("signature", "alexander", "count", "brieskorn", "froyshov", "ranks", "eta", "index")
ENV_VAR = "KNOTFLOER_CACHE"


def _version() -> str:
    from . import __version__

    return __version__


def canonical_params(params: dict) -> str:
    """Stable text form of a parameter dict; values are stringified."""
    return json.dumps({str(k): str(v) for k, v in params.items()}, sort_keys=True, separators=(",", ":"))


def cache_key(kind: str, params: str, version: str | None = None) -> str:
    version = _version() if version is None else version
    payload = json.dumps([kind, params, version], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class InvariantRecord:
    kind: str
    params: str
    value: Any
    version: str = field(default_factory=_version)
    timestamp: float = field(default_factory=time.time)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")

    @property
    def key(self) -> str:
        return cache_key(self.kind, self.params, self.version)

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "InvariantRecord":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise CorruptRecord(f"unreadable record: {err}") from err
        expected = {"kind", "params", "value", "version", "timestamp"}
        if not isinstance(data, dict) or set(data) != expected:
            raise CorruptRecord("record fields do not match the schema")
        if data["kind"] not in KINDS or not isinstance(data["params"], str):
            raise CorruptRecord("record kind or params malformed")
        return cls(**data)


class Cache:
    def __init__(self, directory):
        self.directory = Path(directory)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, kind: str, params: str) -> InvariantRecord | None:
        """The stored record, or None on a miss. Raises CorruptRecord for bad files."""
        path = self._path(cache_key(kind, params))
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        rec = InvariantRecord.from_json(text)
        if rec.kind != kind or rec.params != params or rec.version != _version():
            raise CorruptRecord(f"record at {path.name} does not match its key")
        return rec

    def put(self, record: InvariantRecord) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(record.key)
        if path.exists():
            return  # records are immutable once written
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(record.to_json())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get_or_compute(self, kind: str, params: dict, compute: Callable[[], Any]) -> Any:
        """Cached value for (kind, params), computing and storing it on a miss.

        ``compute`` must return a JSON-compatible value so cached and fresh
        results compare equal.
        """
        key = canonical_params(params)
        try:
            rec = self.get(kind, key)
        except CorruptRecord:
            rec = None
            self._path(cache_key(kind, key)).unlink(missing_ok=True)
        if rec is not None:
            return rec.value
        value = compute()
        self.put(InvariantRecord(kind, key, value))
        return value


def default_cache() -> Cache | None:
    """Cache in $KNOTFLOER_CACHE, or None when the variable is unset."""
    directory = os.environ.get(ENV_VAR)
    return Cache(directory) if directory else None
