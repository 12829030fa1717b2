"""Persistence and querying of deprecation records.

The on-disk format is UTF-8 JSON with a top-level schema_version; see
docs/schema.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import NamedTuple, Optional

from .extractor import DeprecationRecord, ElementKind, Strategy
from .sourcetree import SourceSpan

SCHEMA_VERSION = 1


class SchemaError(Exception):
    def __init__(self, found, supported=SCHEMA_VERSION):
        super().__init__(f"unsupported schema_version {found!r} (supported: {supported})")
        self.found = found
        self.supported = supported


class FormatError(Exception):
    pass


class LookupResult(NamedTuple):
    record: DeprecationRecord
    approximate: bool


@dataclass
class LibraryInfo:
    name: str
    version: Optional[str]
    record_count: int


def _record_key(r: DeprecationRecord) -> tuple:
    return (r.fqn, r.strategy.value, r.span.file, r.span.start_line)


@dataclass
class DeprecationDb:
    schema_version: int = SCHEMA_VERSION
    generated_at: str = ""
    libraries: list[LibraryInfo] = field(default_factory=list)
    records: list[DeprecationRecord] = field(default_factory=list)
    aliases: dict[str, str] = field(default_factory=dict)
    _index: dict[str, list[int]] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.generated_at:
            self.generated_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
        self.rebuild_index()

    def rebuild_index(self):
        self._index = {}
        for i, r in enumerate(self.records):
            self._index.setdefault(r.fqn, []).append(i)

    @classmethod
    def from_records(cls, records, library: str, version: Optional[str] = None,
                     aliases: Optional[dict[str, str]] = None) -> "DeprecationDb":
        records = sorted(records, key=DeprecationRecord.sort_key)
        return cls(
            libraries=[LibraryInfo(library, version, len(records))],
            records=records,
            aliases=dict(aliases or {}),
        )


def save_db(db: DeprecationDb, path) -> None:
    payload = {
        "schema_version": db.schema_version,
        "generated_at": db.generated_at,
        "libraries": [
            {"name": li.name, "version": li.version, "record_count": li.record_count}
            for li in db.libraries
        ],
        "aliases": dict(sorted(db.aliases.items())),
        "records": [
            {
                "fqn": r.fqn,
                "element_kind": r.element_kind.value,
                "strategy": r.strategy.value,
                "message": r.message,
                "library": r.library,
                "library_version": r.library_version,
                "span": {
                    "file": r.span.file,
                    "start_line": r.span.start_line,
                    "start_col": r.span.start_col,
                    "end_line": r.span.end_line,
                    "end_col": r.span.end_col,
                },
            }
            for r in sorted(db.records, key=DeprecationRecord.sort_key)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def _record_from_json(obj) -> DeprecationRecord:
    try:
        span = obj["span"]
        return DeprecationRecord(
            fqn=obj["fqn"],
            element_kind=ElementKind(obj["element_kind"]),
            strategy=Strategy(obj["strategy"]),
            message=obj.get("message"),
            span=SourceSpan(
                span["file"], span["start_line"], span["start_col"],
                span["end_line"], span["end_col"],
            ),
            library=obj.get("library", ""),
            library_version=obj.get("library_version"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed record: {exc}") from exc


def load_db(path) -> DeprecationDb:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise FormatError(f"{path}: top-level JSON object expected")
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(version)
    try:
        libraries = [
            LibraryInfo(li["name"], li.get("version"), li["record_count"])
            for li in payload["libraries"]
        ]
        records = [_record_from_json(r) for r in payload["records"]]
        aliases = dict(payload.get("aliases", {}))
        generated_at = payload["generated_at"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: malformed database: {exc}") from exc
    return DeprecationDb(
        schema_version=SCHEMA_VERSION,
        generated_at=generated_at,
        libraries=libraries,
        records=records,
        aliases=aliases,
    )


def merge(a: DeprecationDb, b: DeprecationDb) -> DeprecationDb:
    """Union of two databases; on duplicate keys the first argument wins."""
    by_key: dict[tuple, DeprecationRecord] = {}
    for r in a.records:
        by_key.setdefault(_record_key(r), r)
    for r in b.records:
        by_key.setdefault(_record_key(r), r)
    records = sorted(by_key.values(), key=DeprecationRecord.sort_key)

    lib_names = {}
    for li in list(a.libraries) + list(b.libraries):
        lib_names.setdefault(li.name, li.version)
    counts: dict[str, int] = {name: 0 for name in lib_names}
    for r in records:
        counts[r.library] = counts.get(r.library, 0) + 1
    libraries = [
        LibraryInfo(name, version, counts.get(name, 0))
        for name, version in sorted(lib_names.items())
    ]

    aliases = dict(b.aliases)
    aliases.update(a.aliases)  # a wins
    return DeprecationDb(
        generated_at=a.generated_at or b.generated_at,
        libraries=libraries,
        records=records,
        aliases=aliases,
    )


def lookup(db: DeprecationDb, fqn: str) -> list[LookupResult]:
    """Exact match, then alias resolution, then longest-suffix match (k >= 2)."""
    hits = db._index.get(fqn)
    if hits:
        return [LookupResult(db.records[i], False) for i in hits]

    alias_target = db.aliases.get(fqn)
    if alias_target:
        hits = db._index.get(alias_target)
        if hits:
            return [LookupResult(db.records[i], False) for i in hits]

    query = tuple(fqn.split("."))
    best_k = 0
    best: list[DeprecationRecord] = []
    for r in db.records:
        segs = tuple(r.fqn.split("."))
        k = 0
        for qa, ra in zip(reversed(query), reversed(segs)):
            if qa != ra:
                break
            k += 1
        if k >= 2:
            if k > best_k:
                best_k, best = k, [r]
            elif k == best_k:
                best.append(r)
    return [LookupResult(r, True) for r in best]
