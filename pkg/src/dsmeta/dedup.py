"""Validity filtering and within-site duplicate collapsing."""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from dsmeta.model import DatasetRecord

_SEP = "\x1f"


def normalized_title(title: str) -> str:
    return " ".join(title.casefold().split())


def dataset_key(title: str, providers: list[str], download_urls: Iterable[str]) -> str:
    """Fingerprint over normalized title, first provider and the sorted set of download URLs."""
    parts = [
        normalized_title(title),
        providers[0] if providers else "",
        "\x1e".join(sorted({u for u in download_urls if u})),
    ]
    return hashlib.sha256(_SEP.join(parts).encode("utf-8")).hexdigest()


def record_key(record: DatasetRecord) -> str:
    return dataset_key(record.title, record.providers, (d.download_url for d in record.downloads))


def record_id(record: DatasetRecord) -> str:
    digest = hashlib.sha256(f"{record.domain}{_SEP}{record_key(record)}".encode("utf-8"))
    return digest.hexdigest()[:32]


def is_valid(record: DatasetRecord) -> bool:
    return bool(record.title.strip()) and bool(record.description.strip())


@dataclass
class FilterResult:
    kept: list[DatasetRecord]
    dropped: list[DatasetRecord]

    @property
    def dropped_count(self) -> int:
        return len(self.dropped)


def filter_invalid(records: Iterable[DatasetRecord]) -> FilterResult:
    kept, dropped = [], []
    for r in records:
        (kept if is_valid(r) else dropped).append(r)
    return FilterResult(kept, dropped)


@dataclass
class DedupResult:
    kept: list[DatasetRecord]
    collapsed: list[DatasetRecord] = field(default_factory=list)
    # dataset keys seen on more than one domain: key -> sorted domains
    cross_site: dict[str, list[str]] = field(default_factory=dict)

    @property
    def collapsed_count(self) -> int:
        return len(self.collapsed)


def _preference(record: DatasetRecord) -> tuple:
    return (record.page_dataset_count != 1, record.page_url, record.entity_index)


def dedup_within_site(records: Iterable[DatasetRecord]) -> DedupResult:
    """Keep one record per (domain, key): landing pages first, then the smallest page URL."""
    groups: dict[tuple[str, str], list[DatasetRecord]] = defaultdict(list)
    key_domains: dict[str, set[str]] = defaultdict(set)
    for r in records:
        key = record_key(r)
        groups[(r.domain, key)].append(r)
        key_domains[key].add(r.domain)

    kept, collapsed = [], []
    for members in groups.values():
        members.sort(key=_preference)
        kept.append(members[0])
        collapsed.extend(members[1:])
    kept.sort(key=lambda r: r.sort_key)
    collapsed.sort(key=lambda r: r.sort_key)
    cross = {k: sorted(d) for k, d in sorted(key_domains.items()) if len(d) > 1}
    return DedupResult(kept, collapsed, cross)
