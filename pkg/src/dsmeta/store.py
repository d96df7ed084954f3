"""Snapshot persistence.

A snapshot is a directory with two files:

``records.jsonl``
    one canonical record per line, keys in :class:`~dsmeta.model.DatasetRecord`
    field order, compact separators, UTF-8, sorted by (domain, page_url,
    entity_index).
``manifest.json``
    snapshot date, record count, pipeline version, config checksums, stage
    counters and the SHA-256 of ``records.jsonl``.

Snapshots are never overwritten once written.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

from dsmeta.errors import SnapshotError
from dsmeta.model import DatasetRecord

RECORDS_FILE = "records.jsonl"
MANIFEST_FILE = "manifest.json"


@dataclass
class Manifest:
    snapshot_date: dt.date
    record_count: int
    pipeline_version: str
    config_checksums: dict[str, str] = field(default_factory=dict)
    counters: dict[str, int] = field(default_factory=dict)
    records_sha256: str = ""

    def to_json_dict(self) -> dict:
        data = asdict(self)
        data["snapshot_date"] = self.snapshot_date.isoformat()
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> Manifest:
        data = dict(data)
        data["snapshot_date"] = dt.date.fromisoformat(data["snapshot_date"])
        return cls(**data)


@dataclass
class CorpusSnapshot:
    manifest: Manifest
    records: list[DatasetRecord]

    @property
    def snapshot_date(self) -> dt.date:
        return self.manifest.snapshot_date

    def by_id(self) -> dict[str, DatasetRecord]:
        return {r.id: r for r in self.records}


def encode_record(record: DatasetRecord) -> str:
    return json.dumps(record.to_json_dict(), ensure_ascii=False, separators=(",", ":"))


def records_bytes(records: list[DatasetRecord]) -> bytes:
    return "".join(encode_record(r) + "\n" for r in records).encode("utf-8")


def write_snapshot(snapshot: CorpusSnapshot, path: str | os.PathLike) -> Path:
    path = Path(path)
    if path.exists() and (not path.is_dir() or any(path.iterdir())):
        raise SnapshotError(f"refusing to overwrite existing snapshot at {path}")
    keys = [r.sort_key for r in snapshot.records]
    if keys != sorted(keys):
        raise SnapshotError("records must be sorted by (domain, page_url, entity_index)")
    if snapshot.manifest.record_count != len(snapshot.records):
        raise SnapshotError(
            f"manifest mismatch: manifest says {snapshot.manifest.record_count}, "
            f"snapshot holds {len(snapshot.records)} records"
        )
    payload = records_bytes(snapshot.records)
    snapshot.manifest.records_sha256 = hashlib.sha256(payload).hexdigest()
    path.mkdir(parents=True, exist_ok=True)
    (path / RECORDS_FILE).write_bytes(payload)
    manifest_text = json.dumps(snapshot.manifest.to_json_dict(), ensure_ascii=False, indent=2) + "\n"
    (path / MANIFEST_FILE).write_text(manifest_text, encoding="utf-8")
    return path


def read_snapshot(path: str | os.PathLike) -> CorpusSnapshot:
    path = Path(path)
    manifest_path = path / MANIFEST_FILE
    records_path = path / RECORDS_FILE
    if not manifest_path.is_file() or not records_path.is_file():
        raise SnapshotError(f"{path} is not a snapshot (expected {MANIFEST_FILE} and {RECORDS_FILE})")
    try:
        manifest = Manifest.from_json_dict(json.loads(manifest_path.read_text(encoding="utf-8")))
    except (ValueError, TypeError, KeyError) as exc:
        raise SnapshotError(f"{manifest_path}: malformed manifest: {exc}") from None

    payload = records_path.read_bytes()
    records: list[DatasetRecord] = []
    lines = payload.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    elif lines:
        raise SnapshotError(f"{records_path}:{len(lines)}: truncated record (no trailing newline)")
    previous = None
    for lineno, line in enumerate(lines, 1):
        try:
            record = DatasetRecord.from_json_dict(json.loads(line.decode("utf-8")))
        except (ValueError, TypeError, KeyError) as exc:
            raise SnapshotError(f"{records_path}:{lineno}: malformed record: {exc}") from None
        if previous is not None and record.sort_key < previous:
            raise SnapshotError(f"{records_path}:{lineno}: records out of order")
        previous = record.sort_key
        records.append(record)
    if manifest.record_count != len(records):
        raise SnapshotError(
            f"manifest mismatch: manifest says {manifest.record_count} records, {records_path} has {len(records)}"
        )
    digest = hashlib.sha256(payload).hexdigest()
    if manifest.records_sha256 and digest != manifest.records_sha256:
        raise SnapshotError(f"checksum mismatch for {records_path}")
    return CorpusSnapshot(manifest, records)
