"""Optional on-disk cache for Hom-space data, enabled by setting SKEIN_CACHE_DIR."""

from __future__ import annotations

import json
import os
from pathlib import Path

FORMAT_VERSION = 1


def _root() -> Path | None:
    root = os.environ.get("SKEIN_CACHE_DIR")
    return Path(root) if root else None


def enabled() -> bool:
    return _root() is not None


def _path(key: str) -> Path | None:
    root = _root()
    return root / f"{key}.v{FORMAT_VERSION}.json" if root else None


def load(key: str) -> dict | None:
    path = _path(key)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("version") != FORMAT_VERSION:
        return None
    return data.get("payload")


def save(key: str, payload: dict) -> None:
    path = _path(key)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"version": FORMAT_VERSION, "key": key, "payload": payload}))
    tmp.replace(path)
