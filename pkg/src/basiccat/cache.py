"""Content-addressed result cache: one JSON document per entry.

Keys hash the command name, a canonical encoding of its parameters and
the engine version, so convention changes never serve stale payloads.
The cache is purely an accelerator; deleting it never changes results.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from typing import Optional

from . import ENGINE_VERSION

__all__ = ["cache_key", "load_payload", "store_payload", "default_cache_dir"]


def default_cache_dir() -> str:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache")
    return os.path.join(base, "basiccat")


def cache_key(command: str, params: dict) -> str:
    blob = json.dumps([command, params, ENGINE_VERSION], sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _entry_path(cache_dir: str, key: str) -> str:
    return os.path.join(cache_dir, f"{key}.json")


def load_payload(cache_dir: str, key: str) -> Optional[object]:
    path = _entry_path(cache_dir, key)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if entry.get("engine_version") != ENGINE_VERSION:
        return None
    return entry.get("payload")


def store_payload(cache_dir: str, key: str, command: str, params: dict,
                  payload: object) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = _entry_path(cache_dir, key)
    entry = {
        "key": key,
        "command": command,
        "params": params,
        "engine_version": ENGINE_VERSION,
        "created_at": time.time(),
        "payload": payload,
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(entry, fh)
    os.replace(tmp, path)  # last writer wins; identical content either way
    return path
