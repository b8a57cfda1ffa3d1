"""Content-addressed file cache for CLI reports."""

from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path


def cache_dir() -> Path:
    env = os.environ.get("DMCT_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "dmct"


def config_key(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def load(key: str):
    """Return the cached payload, or None on a miss or an unreadable entry."""
    path = cache_dir() / f"{key}.json"
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        print(f"warning: ignoring corrupted cache file {path}: {exc}", file=sys.stderr)
        return None


def store(key: str, payload) -> None:
    d = cache_dir()
    try:
        d.mkdir(parents=True, exist_ok=True)
        tmp = d / f"{key}.json.tmp"
        tmp.write_text(json.dumps(payload, sort_keys=True))
        tmp.replace(d / f"{key}.json")
    except OSError as exc:
        raise OSError(f"cannot write cache entry under {d}: {exc}") from exc
