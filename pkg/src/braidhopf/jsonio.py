"""Deterministic JSON reading and writing; matrices print one row per line."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import FormatError


def _is_flat(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (list, dict)) for v in value)


def dumps(data, indent: int = 0) -> str:
    pad = " " * indent
    inner = " " * (indent + 1)
    if isinstance(data, dict):
        if not data:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {dumps(v, indent + 1)}" for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(data, list) and data and not _is_flat(data):
        items = [inner + dumps(v, indent + 1) for v in data]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(data, ensure_ascii=False, separators=(", ", ": "))


def write_json(path, data) -> None:
    Path(path).write_text(dumps(data) + "\n", encoding="utf-8")


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
