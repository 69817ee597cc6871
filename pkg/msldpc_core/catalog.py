# msldpc_core/catalog.py
"""
Append-only JSON-lines catalog of discovered codes.

Each line is one CatalogEntry: the record fields, the SearchConfig that
produced it and a UTC timestamp. Entries are unique by dedup_key (the
generator polynomial), so re-running a search appends nothing.
Appends are serialized by a process lock plus an advisory file lock where
the platform has one.
"""

from datetime import datetime, timezone
from typing import Any, Dict, Iterable, List, Optional
import logging
import os
import threading

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from msldpc_core import settings
from msldpc_core.errors import CatalogError
from msldpc_core.polyring import BinaryPolynomial
from msldpc_core.record import CodeRecord

try:
    import fcntl
except ImportError:  # not available on Windows
    fcntl = None

log = logging.getLogger(__name__)


def _utc_now() -> str:
    return datetime.now(timezone.utc).replace(tzinfo=None).isoformat(timespec="seconds") + "Z"


class CatalogEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = settings.CATALOG_SCHEMA_VERSION
    n: int
    k: int
    subset: List[int] = Field(default_factory=list)
    u: str
    theta: str
    g: str
    weight: int
    bch_bound: int
    r_theta: int
    orthogonal: bool
    dedup_key: str
    provenance: Dict[str, Any] = Field(default_factory=dict)
    created_at: str = Field(default_factory=_utc_now)

    @staticmethod
    def from_record(rec: CodeRecord, provenance: Optional[Dict[str, Any]] = None) -> "CatalogEntry":
        d = rec.to_dict()
        d.pop("meta", None)
        return CatalogEntry(**d, provenance=dict(provenance or {}))

    def to_record(self) -> CodeRecord:
        return CodeRecord(
            n=self.n,
            k=self.k,
            subset=tuple(self.subset),
            u=BinaryPolynomial.from_text(self.u),
            theta=BinaryPolynomial.from_text(self.theta),
            g=BinaryPolynomial.from_text(self.g),
            bch_bound=self.bch_bound,
            r_theta=self.r_theta,
            orthogonal=self.orthogonal,
        )


class CodeCatalog:
    def __init__(self, path: Optional[str] = None):
        self.path = path or settings.catalog_path()
        self._lock = threading.Lock()

    def load(self) -> List[CatalogEntry]:
        if not os.path.exists(self.path):
            return []
        with open(self.path, "r", encoding="utf-8") as f:
            return self._parse(f.read().splitlines())

    def _parse(self, lines: Iterable[str]) -> List[CatalogEntry]:
        entries: List[CatalogEntry] = []
        seen = set()
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                entry = CatalogEntry.model_validate_json(line)
            except ValidationError as e:
                raise CatalogError(f"{self.path}:{lineno}: malformed entry: {e}") from e
            if entry.schema_version != settings.CATALOG_SCHEMA_VERSION:
                raise CatalogError(f"{self.path}:{lineno}: unsupported schema_version {entry.schema_version}")
            if entry.dedup_key in seen:
                raise CatalogError(f"{self.path}:{lineno}: duplicate dedup_key {entry.dedup_key!r}")
            seen.add(entry.dedup_key)
            entries.append(entry)
        return entries

    def find(self, dedup_key: str) -> Optional[CatalogEntry]:
        for entry in self.load():
            if entry.dedup_key == dedup_key:
                return entry
        return None

    def append_new(self, records: Iterable[CodeRecord], provenance: Optional[Dict[str, Any]] = None) -> int:
        """Append records whose dedup_key is not yet present; returns how many were added."""
        records = list(records)
        parent = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(parent, exist_ok=True)
        with self._lock:
            with open(self.path, "a+", encoding="utf-8") as f:
                self._flock(f, exclusive=True)
                try:
                    f.seek(0)
                    existing = {e.dedup_key for e in self._parse(f.read().splitlines())}
                    added = 0
                    for rec in records:
                        if rec.dedup_key in existing:
                            continue
                        entry = CatalogEntry.from_record(rec, provenance)
                        f.write(entry.model_dump_json() + "\n")
                        existing.add(rec.dedup_key)
                        added += 1
                    f.flush()
                finally:
                    self._flock(f, exclusive=False)
        log.info("catalog %s: %d new of %d records", self.path, added, len(records))
        return added

    @staticmethod
    def _flock(f, exclusive: bool) -> None:
        if fcntl is None:
            log.warning("advisory file lock unavailable; relying on the process lock only")
            return
        fcntl.flock(f.fileno(), fcntl.LOCK_EX if exclusive else fcntl.LOCK_UN)
