"""File-backed sheet registry with content hashing and atomic writes.

Layout under the store root:

    manifest.json           # format_version + one entry per record
    sheets/<digest16>.bimi  # canonical serialization, named by id digest

Every mutation writes the sheet file first, then the manifest, each via
write-to-temp-plus-atomic-rename. A crash between the two steps leaves the
old manifest in place; the orphaned sheet file is ignored on reload.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from . import format as fmt
from .model import Sheet, Violation, identity, validate
from .vocab import Vocabulary, builtin_vocabularies

FORMAT_VERSION = 1

STATES = ("draft", "submitted", "accepted", "rejected")
_TRANSITIONS = {
    ("draft", "submit"): "submitted",
    ("submitted", "accept"): "accepted",
    ("submitted", "reject"): "rejected",
    ("rejected", "submit"): "submitted",
}


class StoreError(Exception):
    pass


class CorruptStoreError(StoreError):
    def __init__(self, path: str, expected: str, actual: str):
        super().__init__(f"content hash mismatch for {path}: expected {expected}, got {actual}")
        self.path = path
        self.expected = expected
        self.actual = actual


class ConflictError(StoreError):
    pass


class NotFoundError(StoreError):
    pass


class IllegalTransitionError(StoreError):
    pass


class RejectedSubmission(Exception):
    """Submission refused because the sheet fails parsing or validation."""

    def __init__(self, code: str, violations: list[Violation] | None = None,
                 parse_error: fmt.ParseError | None = None):
        self.code = code  # E_PARSE | E_VALIDATION
        self.violations = violations or []
        self.parse_error = parse_error
        detail = str(parse_error) if parse_error else "; ".join(
            f"{v.code} at {v.path}" for v in self.violations
        )
        super().__init__(f"{code}: {detail}")


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


@dataclass(frozen=True)
class RegistryRecord:
    id: str
    sheet: Sheet
    state: str
    created_at: str
    updated_at: str
    content_hash: str

    def summary(self) -> dict:
        md = self.sheet.metadata
        return {
            "id": self.id,
            "name": md.name,
            "version": md.version,
            "authors": list(md.authors),
            "state": self.state,
            "content_hash": self.content_hash,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
        }


def _atomic_write(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class SheetStore:
    """Directory-backed record store. Mutations are serialized by a lock."""

    def __init__(self, root: str | Path, vocabs: dict[str, Vocabulary] | None = None):
        self.root = Path(root)
        self.vocabs = vocabs or builtin_vocabularies()
        self._lock = threading.Lock()
        self._records: dict[str, RegistryRecord] = {}
        self._load()

    # -- persistence ------------------------------------------------------

    def _manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def _sheet_path(self, sheet_id: str) -> Path:
        digest = hashlib.sha256(sheet_id.encode("utf-8")).hexdigest()[:16]
        return self.root / "sheets" / f"{digest}.bimi"

    def _load(self) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        manifest_path = self._manifest_path()
        if not manifest_path.exists():
            self._write_manifest()
            return
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise StoreError(f"cannot read manifest: {exc}") from exc
        if manifest.get("format_version") != FORMAT_VERSION:
            raise StoreError(f"unsupported store format version: {manifest.get('format_version')}")
        for sheet_id, entry in manifest.get("records", {}).items():
            path = self.root / entry["path"]
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise StoreError(f"cannot read sheet file {path}: {exc}") from exc
            actual = content_hash(text)
            if actual != entry["content_hash"]:
                raise CorruptStoreError(str(path), entry["content_hash"], actual)
            self._records[sheet_id] = RegistryRecord(
                id=sheet_id,
                sheet=fmt.parse(text),
                state=entry["state"],
                created_at=entry["created_at"],
                updated_at=entry["updated_at"],
                content_hash=entry["content_hash"],
            )

    def _write_manifest(self) -> None:
        manifest = {
            "format_version": FORMAT_VERSION,
            "records": {
                r.id: {
                    "state": r.state,
                    "content_hash": r.content_hash,
                    "path": str(self._sheet_path(r.id).relative_to(self.root)),
                    "created_at": r.created_at,
                    "updated_at": r.updated_at,
                }
                for r in self._records.values()
            },
        }
        _atomic_write(self._manifest_path(), json.dumps(manifest, indent=2, sort_keys=True) + "\n")

    def _persist(self, record: RegistryRecord, canonical: str) -> None:
        _atomic_write(self._sheet_path(record.id), canonical)
        self._records[record.id] = record
        self._write_manifest()

    # -- operations -------------------------------------------------------

    def submit(self, sheet_text: str) -> RegistryRecord:
        try:
            sheet = fmt.parse(sheet_text)
        except fmt.ParseError as exc:
            raise RejectedSubmission("E_PARSE", parse_error=exc) from exc
        violations = validate(sheet, self.vocabs)
        errors = [v for v in violations if v.is_error]
        if errors:
            raise RejectedSubmission("E_VALIDATION", violations=violations)
        canonical = fmt.serialize(sheet)
        digest = content_hash(canonical)
        sheet_id = identity(sheet)
        with self._lock:
            existing = self._records.get(sheet_id)
            if existing is not None:
                if existing.content_hash == digest and existing.state != "rejected":
                    return existing  # idempotent resubmission
                if existing.state != "rejected":
                    raise ConflictError(
                        f"{sheet_id} already exists with different content in state {existing.state}"
                    )
                record = replace(
                    existing,
                    sheet=sheet,
                    state="submitted",
                    updated_at=_now(),
                    content_hash=digest,
                )
            else:
                now = _now()
                record = RegistryRecord(sheet_id, sheet, "submitted", now, now, digest)
            self._persist(record, canonical)
            return record

    def transition(self, sheet_id: str, action: str) -> RegistryRecord:
        if action not in ("accept", "reject"):
            raise IllegalTransitionError(f"unknown action {action!r}")
        with self._lock:
            record = self._records.get(sheet_id)
            if record is None:
                raise NotFoundError(f"no record with id {sheet_id!r}")
            new_state = _TRANSITIONS.get((record.state, action))
            if new_state is None:
                raise IllegalTransitionError(
                    f"cannot {action} a record in state {record.state!r}"
                )
            updated = replace(record, state=new_state, updated_at=_now())
            self._persist(updated, fmt.serialize(updated.sheet))
            return updated

    def get(self, sheet_id: str) -> RegistryRecord:
        record = self._records.get(sheet_id)
        if record is None:
            raise NotFoundError(f"no record with id {sheet_id!r}")
        return record

    def records(self, states: tuple[str, ...] = ("accepted",)) -> list[RegistryRecord]:
        out = [r for r in self._records.values() if r.state in states]
        out.sort(key=lambda r: (r.sheet.metadata.name.casefold(), r.id))
        return out

    def all_records(self) -> list[RegistryRecord]:
        return self.records(STATES)
