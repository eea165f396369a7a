"""Persistent trace cache: one ``sha256<TAB>expression`` line per entry."""

from __future__ import annotations

import hashlib
import logging
import os
import threading
from pathlib import Path
from typing import Dict, Optional

from .coeffs import RationalFn, parse_expr

log = logging.getLogger(__name__)

ENV_VAR = "SINGULAR_HECKE_CACHE"


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "singular-hecke" / "trace-cache.tsv"


def key_for(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class TraceCache:
    """Loaded wholesale on open; new entries are appended one line at a time."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._entries: Dict[str, str] = {}
        self._lock = threading.Lock()
        self._load()

    def _load(self):
        try:
            text = self.path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return
        for lineno, line in enumerate(text.splitlines(), 1):
            key, sep, value = line.partition("\t")
            if not sep or len(key) != 64 or not value:
                log.warning("skipping malformed cache line %d in %s", lineno, self.path)
                continue
            self._entries[key] = value

    def __len__(self):
        return len(self._entries)

    def get(self, text: str) -> Optional[RationalFn]:
        value = self._entries.get(key_for(text))
        if value is None:
            return None
        try:
            return parse_expr(value)
        except ValueError:
            return None

    def put(self, text: str, value: RationalFn):
        key = key_for(text)
        rendered = value.render()
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = rendered
            self.path.parent.mkdir(parents=True, exist_ok=True)
            # a single write of a full line keeps concurrent appenders from interleaving
            fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
            try:
                os.write(fd, f"{key}\t{rendered}\n".encode("utf-8"))
            finally:
                os.close(fd)
