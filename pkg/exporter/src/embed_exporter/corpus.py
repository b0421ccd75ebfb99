"""Minimal JSONL corpus reader matching the toolkit's corpus schema:
one object per line with ``id`` and ``text`` (``label`` is ignored here)."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ExportError


def read_corpus(path) -> tuple[list[str], list[str]]:
    """Return (ids, texts) in file order; duplicate ids are rejected."""
    ids: list[str] = []
    texts: list[str] = []
    seen = set()
    with open(Path(path), "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ExportError(f"{path}:{lineno}: malformed JSON: {exc}") from exc
            if "id" not in record or "text" not in record:
                raise ExportError(f"{path}:{lineno}: record needs 'id' and 'text'")
            doc_id = record["id"]
            if doc_id in seen:
                raise ExportError(f"{path}:{lineno}: duplicate id {doc_id!r}")
            seen.add(doc_id)
            ids.append(doc_id)
            texts.append(record["text"])
    if not ids:
        raise ExportError(f"{path}: corpus is empty")
    return ids, texts
