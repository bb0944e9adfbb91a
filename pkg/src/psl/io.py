"""JSON forms of graphs, labels, labelings and reports."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .graph import Graph, build_graph

__all__ = ["InputError", "load_json", "dumps", "atomic_write", "graph_from_json", "assignments_from_json"]


class InputError(ValueError):
    """Unreadable or structurally wrong input file."""


def load_json(path) -> object:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{p}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def atomic_write(path, text: str) -> None:
    """Write to a temporary file next to ``path`` and rename it into place."""
    p = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{p.name}.", dir=p.parent if str(p.parent) else ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, p)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def graph_from_json(doc) -> Graph:
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise InputError('graph JSON must be an object with "vertices" and "edges"')
    if not isinstance(doc["vertices"], list) or not isinstance(doc["edges"], list):
        raise InputError('"vertices" and "edges" must be arrays')
    return build_graph(doc["vertices"], doc["edges"])


def assignments_from_json(doc) -> dict:
    """Raw vertex -> label mapping; label contents are checked by validation."""
    if not isinstance(doc, dict) or not isinstance(doc.get("assignments"), dict):
        raise InputError('labeling JSON must be an object with an "assignments" object')
    return dict(doc["assignments"])
