"""On-disk cache for the Stirling and Bernoulli tables.

The cache is an optimization only: anything unreadable, from another format
version, or failing its checksum is ignored and rebuilt.  Serialization is
canonical, so loading a file and saving it again without growing a table
reproduces the file byte for byte.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from fractions import Fraction
from pathlib import Path

from .combinatorics import get_table

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
CACHE_ENV = "POLYCOSEC_CACHE_DIR"
CACHE_FILE = "combtables.json"
CACHED_KINDS = ("bernoulli", "stirling1_unsigned", "stirling2")


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "polycosec"


def _encode_entries(kind: str, entries) -> list:
    if kind == "bernoulli":
        return [f"{q.numerator}/{q.denominator}" for q in entries]
    return [list(row) for row in entries]


def _decode_entries(kind: str, raw) -> tuple:
    if not isinstance(raw, list):
        raise ValueError("entries must be a list")
    if kind == "bernoulli":
        out = []
        for s in raw:
            num, den = s.split("/")
            out.append(Fraction(int(num), int(den)))
        return tuple(out)
    rows = []
    for n, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n + 1 or not all(type(v) is int and v >= 0 for v in row):
            raise ValueError(f"malformed {kind} row {n}")
        rows.append(tuple(row))
    return tuple(rows)


def _canonical(tables: dict) -> str:
    return json.dumps(tables, sort_keys=True, separators=(",", ":"))


def dumps() -> str:
    """Serialize the current in-memory tables."""
    tables = {}
    for kind in CACHED_KINDS:
        t = get_table(kind)
        tables[kind] = {"max_index": t.max_index, "entries": _encode_entries(kind, t.entries)}
    doc = {
        "format_version": FORMAT_VERSION,
        "checksum": hashlib.sha256(_canonical(tables).encode()).hexdigest(),
        "tables": tables,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> dict:
    """Parse and validate a cache document; raises ``ValueError`` on anything off."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
        raise ValueError("format version mismatch")
    tables = doc.get("tables")
    if not isinstance(tables, dict) or set(tables) != set(CACHED_KINDS):
        raise ValueError("unexpected table set")
    if hashlib.sha256(_canonical(tables).encode()).hexdigest() != doc.get("checksum"):
        raise ValueError("checksum mismatch")
    decoded = {}
    for kind in CACHED_KINDS:
        entry = tables[kind]
        entries = _decode_entries(kind, entry.get("entries"))
        if entry.get("max_index") != len(entries) - 1:
            raise ValueError(f"{kind}: max_index does not match entries")
        decoded[kind] = entries
    return decoded


def load(path: Path) -> bool:
    """Seed the tables from ``path``.  Returns ``False`` (and leaves the
    tables alone) if the file is missing or unusable."""
    try:
        text = Path(path).read_text()
    except FileNotFoundError:
        return False
    except OSError as exc:
        log.warning("cannot read cache %s: %s", path, exc)
        return False
    try:
        decoded = loads(text)
    except (ValueError, AttributeError, TypeError) as exc:
        log.warning("ignoring cache %s (%s); it will be rebuilt", path, exc)
        return False
    for kind, entries in decoded.items():
        if entries:
            get_table(kind).seed(entries)
    return True


def save(path: Path) -> bool:
    """Write the tables to ``path`` if the content changed.  Returns whether
    a write happened."""
    path = Path(path)
    text = dumps()
    try:
        if path.read_text() == text:
            return False
    except OSError:
        pass
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
    return True
