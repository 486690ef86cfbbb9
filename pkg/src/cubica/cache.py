"""Append-only JSON-lines cache for L-values.

Each line is one :class:`CacheEntry`.  The in-memory index maps the key tuple
(kind, conductor, gen_a, gen_b, alpha) to the most recent entry of the current
schema version; lines with another version are ignored, corrupted lines are
skipped with a warning.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import CorruptCache

SCHEMA_VERSION = 1
CACHE_FILE = "lvalues.jsonl"
ENV_VAR = "CUBICA_CACHE_DIR"

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CacheEntry:
    kind: str
    conductor: int
    gen_a: int
    gen_b: int
    alpha: str
    re: float
    im: float
    method: str
    est_error: float
    version: int = SCHEMA_VERSION

    @property
    def key(self) -> tuple:
        return (self.kind, self.conductor, self.gen_a, self.gen_b, self.alpha)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


def alpha_key(alpha: complex) -> str:
    """Exact text form of alpha used in cache keys (repr of the float parts)."""
    alpha = complex(alpha)
    return f"{alpha.real!r},{alpha.imag!r}"


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, Path.home() / ".cache" / "cubica"))


class LValueCache:
    def __init__(self, directory=None, *, version: int = SCHEMA_VERSION):
        self.dir = Path(directory) if directory is not None else default_cache_dir()
        self.dir.mkdir(parents=True, exist_ok=True)
        self.path = self.dir / CACHE_FILE
        self.version = version
        self._index: dict[tuple, CacheEntry] = {}
        self._lock = threading.Lock()
        self.skipped = 0
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        try:
            fh = self.path.open(encoding="utf-8")
        except OSError as exc:
            raise CorruptCache(f"cannot read {self.path}: {exc}") from exc
        with fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = CacheEntry(**json.loads(line))
                except (ValueError, TypeError) as exc:
                    self.skipped += 1
                    log.warning("skipping corrupted cache line %d: %s", lineno, exc)
                    continue
                if entry.version == self.version:
                    self._index[entry.key] = entry

    def __len__(self) -> int:
        return len(self._index)

    def get(self, key: tuple) -> CacheEntry | None:
        return self._index.get(key)

    def put(self, entry: CacheEntry) -> None:
        if entry.version != self.version:
            entry = CacheEntry(**{**asdict(entry), "version": self.version})
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(asdict(entry), sort_keys=True) + "\n")
            self._index[entry.key] = entry


def cache_get(cache: LValueCache, key: tuple) -> CacheEntry | None:
    return cache.get(key)


def cache_put(cache: LValueCache, entry: CacheEntry) -> None:
    cache.put(entry)
