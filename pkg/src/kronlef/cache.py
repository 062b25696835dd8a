"""Append-only JSON-lines caches for character values and Kronecker coefficients.

The cache directory comes from ``KRON_CACHE_DIR`` (default ``.kron-cache/``);
setting it to the empty string disables caching.  Lines that fail to parse are
skipped with a warning.  If the directory cannot be created or written, a
warning is issued and the cache keeps working in memory only.
"""

from __future__ import annotations

import json
import os
import warnings
from pathlib import Path
from typing import Any, Callable

DEFAULT_DIR = ".kron-cache"
ENV_VAR = "KRON_CACHE_DIR"


class CacheWarning(UserWarning):
    pass


def cache_dir() -> Path | None:
    value = os.environ.get(ENV_VAR)
    if value is None:
        return Path(DEFAULT_DIR)
    return Path(value) if value else None


class JsonlCache:
    """Key/value store backed by one JSON-lines file.

    ``encode(key, value)`` builds the record written to disk, ``decode(record)``
    returns ``(key, value)``.
    """

    def __init__(self, path: Path | None,
                 encode: Callable[[Any, Any], dict],
                 decode: Callable[[dict], tuple[Any, Any]]):
        self.path = path
        self._encode = encode
        self._decode = decode
        self._data: dict | None = None
        self.hits = 0
        self.misses = 0
        self._writable = path is not None

    @property
    def enabled(self) -> bool:
        return self.path is not None

    def _load(self) -> dict:
        if self._data is not None:
            return self._data
        self._data = {}
        if self.path is None or not self.path.exists():
            return self._data
        bad = 0
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    key, value = self._decode(json.loads(line))
                except (ValueError, KeyError, TypeError):
                    bad += 1
                    continue
                self._data[key] = value
        if bad:
            warnings.warn(f"{self.path}: skipped {bad} corrupted line(s)", CacheWarning,
                          stacklevel=3)
        return self._data

    def get(self, key, default=None):
        if self.path is None:
            self.misses += 1
            return default
        data = self._load()
        if key in data:
            self.hits += 1
            return data[key]
        self.misses += 1
        return default

    def __contains__(self, key) -> bool:
        return self.path is not None and key in self._load()

    def put(self, key, value) -> None:
        if self.path is None:
            return
        data = self._load()
        if data.get(key) == value:
            return
        data[key] = value
        if not self._writable:
            return
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(self._encode(key, value)) + "\n")
        except OSError as exc:
            self._writable = False
            warnings.warn(f"cache directory not writable ({exc}); continuing without "
                          "persistence", CacheWarning, stacklevel=2)

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses}


def _enc_char(key, value):
    m, lam, mu = key
    return {"m": m, "lambda": list(lam), "mu": list(mu), "value": str(value)}


def _dec_char(rec):
    lam = tuple(int(x) for x in rec["lambda"])
    mu = tuple(int(x) for x in rec["mu"])
    m = int(rec["m"])
    if sum(lam) != m or sum(mu) != m:
        raise ValueError("inconsistent record")
    return (m, lam, mu), int(rec["value"])


def _enc_coeff(key, value):
    return {"key": key, "value": str(value)}


def _dec_coeff(rec):
    if not isinstance(rec["key"], str):
        raise TypeError("key must be a string")
    return rec["key"], int(rec["value"])


def _enc_ckpt(key, value):
    return {"key": key[0], "part": value[0], "value": str(value[1])}


def _dec_ckpt(rec):
    if not isinstance(rec["key"], str):
        raise TypeError("key must be a string")
    return (rec["key"], int(rec["part"])), (int(rec["part"]), int(rec["value"]))


class Caches:
    """The three caches used by the package, rooted at one directory."""

    def __init__(self, root: Path | None = None, use_env: bool = True):
        if root is None and use_env:
            root = cache_dir()
        self.root = root

        def p(name):
            return None if root is None else root / name

        self.characters = JsonlCache(p("characters.jsonl"), _enc_char, _dec_char)
        self.coefficients = JsonlCache(p("coefficients.jsonl"), _enc_coeff, _dec_coeff)
        self.checkpoints = JsonlCache(p("checkpoints.jsonl"), _enc_ckpt, _dec_ckpt)

    def stats(self) -> dict:
        return {"characters": self.characters.stats(),
                "coefficients": self.coefficients.stats()}


_default: Caches | None = None


def default_caches() -> Caches:
    """Process-wide caches, created from the environment on first use."""
    global _default
    if _default is None:
        _default = Caches()
    return _default


def reset_default_caches() -> None:
    global _default
    _default = None
