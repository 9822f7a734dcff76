"""On-disk cache of canonical-basis polynomials.

The file is line-delimited JSON: a header, one record per canonical element,
and a trailer holding the record count and a SHA-256 digest of the record
lines.  A record reads

    {"ctx": "C2", "basis": "N", "y": [0, 2, 1], "entries": [[x_word, [[exp, coeff], ...]], ...]}

with elements written as their canonical reduced words.  Records and entries
are sorted, so exporting the same polynomials always gives the same bytes.
Reading validates the whole file before anything is merged into memory.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .affine_weyl import NotInAffineWeylGroup
from .hecke import KLEngine, all_engines, engine_for
from .root_data import build_root_system

FORMAT = "affblocks-polynomial-cache"
VERSION = 1
ENV_VAR = "AFFBLOCKS_CACHE"


class CacheError(Exception):
    """Malformed, truncated, conflicting or wrong-version cache file."""


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _records_of(engine: KLEngine) -> list[dict]:
    W = engine.W
    out = []
    for basis, memo in (("H", engine.memo_H), ("N", engine.memo_N)):
        for y, raw in list(memo.data.items()):
            entries = [[list(W.reduced_word(x)), [[e, raw[x][e]] for e in sorted(raw[x])]] for x in raw]
            entries.sort(key=lambda e: (len(e[0]), e[0]))
            out.append({"ctx": engine.name, "basis": basis, "y": list(W.reduced_word(y)), "entries": entries})
    return out


def export_lines(engines=None) -> list[str]:
    engines = all_engines() if engines is None else engines
    records = [r for e in engines for r in _records_of(e)]
    records.sort(key=lambda r: (r["ctx"], r["basis"], len(r["y"]), r["y"]))
    body = [_dump(r) for r in records]
    digest = hashlib.sha256("\n".join(body).encode()).hexdigest()
    return [_dump({"format": FORMAT, "version": VERSION})] + body + [_dump({"end": len(body), "sha256": digest})]


def _atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(path, engines=None) -> int:
    lines = export_lines(engines)
    _atomic_write(Path(path), "\n".join(lines) + "\n")
    return len(lines) - 2


def _element(W, word, what: str):
    if not isinstance(word, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in word):
        raise CacheError(f"{what} is not a list of generator indices")
    if any(i < 0 or i >= W.ngens for i in word):
        raise CacheError(f"{what} uses a generator index out of range")
    x = W.from_word(word)
    if list(W.reduced_word(x)) != word:
        raise CacheError(f"{what} is not in canonical reduced form")
    return x


def _parse_record(rec) -> tuple[KLEngine, str, object, dict]:
    if not isinstance(rec, dict) or set(rec) != {"ctx", "basis", "y", "entries"}:
        raise CacheError("record has unexpected fields")
    try:
        rs = build_root_system(rec["ctx"])
    except (ValueError, TypeError) as exc:
        raise CacheError(f"bad root system {rec['ctx']!r}: {exc}") from None
    if rs.name != rec["ctx"]:
        raise CacheError(f"root system name {rec['ctx']!r} is not canonical")
    engine = engine_for(rs)
    W = engine.W
    basis = rec["basis"]
    if basis not in ("H", "N"):
        raise CacheError(f"unknown basis {basis!r}")
    y = _element(W, rec["y"], "y")
    if basis == "N" and not W.in_fW(y):
        raise CacheError("antispherical record indexed outside fW")
    raw: dict = {}
    if not isinstance(rec["entries"], list):
        raise CacheError("entries must be a list")
    for entry in rec["entries"]:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], list)):
            raise CacheError("malformed entry")
        x = _element(W, entry[0], "entry word")
        if x in raw:
            raise CacheError("duplicate entry")
        if basis == "N" and not W.in_fW(x):
            raise CacheError("antispherical entry outside fW")
        poly = {}
        for term in entry[1]:
            if not (isinstance(term, list) and len(term) == 2
                    and all(isinstance(t, int) and not isinstance(t, bool) for t in term)):
                raise CacheError("malformed polynomial term")
            e, c = term
            if c == 0 or e in poly:
                raise CacheError("polynomial terms must be distinct and non-zero")
            poly[e] = c
        if not poly:
            raise CacheError("empty polynomial")
        raw[x] = poly
    if raw.get(y) != {0: 1}:
        raise CacheError("canonical element does not start with its own standard basis element")
    return engine, basis, y, raw


def parse_text(text: str) -> list[tuple[KLEngine, str, object, dict]]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2:
        raise CacheError("cache file is truncated")
    try:
        header = json.loads(lines[0])
        trailer = json.loads(lines[-1])
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache file is not valid JSON lines: {exc}") from None
    if not isinstance(header, dict) or header.get("format") != FORMAT:
        raise CacheError("not an affblocks polynomial cache")
    if header.get("version") != VERSION:
        raise CacheError(f"cache version {header.get('version')!r} is not supported (expected {VERSION})")
    body = lines[1:-1]
    if not isinstance(trailer, dict) or set(trailer) != {"end", "sha256"}:
        raise CacheError("cache file is truncated (missing trailer)")
    if trailer["end"] != len(body):
        raise CacheError("record count does not match the trailer")
    if hashlib.sha256("\n".join(body).encode()).hexdigest() != trailer["sha256"]:
        raise CacheError("checksum mismatch")
    out = []
    seen = set()
    for line in body:
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CacheError(f"bad record: {exc}") from None
        try:
            parsed = _parse_record(rec)
        except NotInAffineWeylGroup as exc:
            raise CacheError(str(exc)) from None
        key = (parsed[0].name, parsed[1], parsed[2])
        if key in seen:
            raise CacheError("duplicate record")
        seen.add(key)
        out.append(parsed)
    return out


def validate(path) -> int:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CacheError(f"cannot read {path}: {exc}") from None
    return len(parse_text(text))


def load(path, missing_ok: bool = False) -> int:
    """Merge a cache file into the in-memory engines; all or nothing."""
    path = Path(path)
    if missing_ok and not path.exists():
        return 0
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CacheError(f"cannot read {path}: {exc}") from None
    parsed = parse_text(text)
    for engine, basis, y, raw in parsed:
        memo = engine.memo_H if basis == "H" else engine.memo_N
        have = memo.get(y)
        if have is not None and have != raw:
            raise CacheError(f"record for {engine.name} disagrees with a computed polynomial")
    for engine, basis, y, raw in parsed:
        memo = engine.memo_H if basis == "H" else engine.memo_N
        if memo.get(y) is None:
            memo.put(y, raw)
    return len(parsed)


def default_path():
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None
