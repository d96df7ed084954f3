"""extract -> map -> normalize -> topics -> filter_invalid -> dedup_within_site."""

from __future__ import annotations

import datetime as dt
import email.utils
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from dsmeta import __version__
from dsmeta.config import NormalizationConfig
from dsmeta.dedup import dedup_within_site, filter_invalid
from dsmeta.errors import InvalidURLError
from dsmeta.extract import Diagnostic, TripleGraph, extract_structured_data, select_dataset_entities
from dsmeta.ingest import IngestSource, IngestStats, Page, ingest
from dsmeta.model import DatasetRecord, map_entity_to_record
from dsmeta.normalize import detect_language, normalize_record, parse_date
from dsmeta.store import CorpusSnapshot, Manifest
from dsmeta.topics import assign_topics

log = logging.getLogger(__name__)


@dataclass
class PageResult:
    page_url: str
    records: list[DatasetRecord] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    graph: TripleGraph | None = None


def page_date(text: str | None, order: str = "mdy") -> dt.date | None:
    if not text:
        return None
    parsed = parse_date(text, order)
    if parsed is not None:
        return parsed
    try:
        return email.utils.parsedate_to_datetime(text).date()
    except (TypeError, ValueError, IndexError):
        return None


def process_page(page: Page, config: NormalizationConfig, keep_graph: bool = False) -> PageResult:
    """All per-page work; pure given the page and the config."""
    graph = extract_structured_data(page.html, page.page_url)
    result = PageResult(page.page_url, diagnostics=list(graph.diagnostics), graph=graph if keep_graph else None)
    entities = select_dataset_entities(graph)
    if not entities:
        return result
    language = detect_language(
        graph.html_lang, page.content_language or graph.content_language, graph.literal_languages()
    )
    modified = page_date(page.last_modified or graph.page_modified, config.date_order)
    for index, entity in enumerate(entities):
        raw = map_entity_to_record(entity, page.page_url, config.mappings, index)
        try:
            record = normalize_record(
                raw, config, page_dataset_count=len(entities), language=language, page_modified=modified
            )
        except InvalidURLError as exc:
            result.diagnostics.append(Diagnostic("invalid-url", str(exc)))
            return PageResult(page.page_url, [], result.diagnostics, result.graph)
        record.topics = assign_topics(record, graph.page_text, config.lexicon)
        result.records.append(record)
    return result


_WORKER_CONFIG: NormalizationConfig | None = None


def _init_worker(config: NormalizationConfig) -> None:
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _process_in_worker(page: Page) -> PageResult:
    assert _WORKER_CONFIG is not None
    return process_page(page, _WORKER_CONFIG)


def process_pages(pages: Iterable[Page], config: NormalizationConfig, workers: int = 1) -> Iterable[PageResult]:
    if workers <= 1:
        for page in pages:
            yield process_page(page, config)
        return
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(config,)) as pool:
        # map preserves input order, so output is identical to the sequential path
        yield from pool.map(_process_in_worker, pages, chunksize=64)


def build_snapshot(
    pages: Iterable[Page],
    config: NormalizationConfig,
    snapshot_date: dt.date,
    workers: int = 1,
) -> CorpusSnapshot:
    counters = {
        "pages_seen": 0,
        "pages_with_datasets": 0,
        "entities": 0,
        "dropped_invalid": 0,
        "collapsed_duplicates": 0,
        "records": 0,
        "diagnostics": 0,
        "cross_site_duplicate_keys": 0,
    }
    records: list[DatasetRecord] = []
    for result in process_pages(pages, config, workers):
        counters["pages_seen"] += 1
        counters["diagnostics"] += len(result.diagnostics)
        for diag in result.diagnostics:
            log.info("%s: %s: %s", result.page_url, diag.code, diag.message)
        if result.records:
            counters["pages_with_datasets"] += 1
        counters["entities"] += len(result.records)
        records.extend(result.records)

    filtered = filter_invalid(records)
    deduped = dedup_within_site(filtered.kept)
    counters["dropped_invalid"] = filtered.dropped_count
    counters["collapsed_duplicates"] = deduped.collapsed_count
    counters["records"] = len(deduped.kept)
    counters["cross_site_duplicate_keys"] = len(deduped.cross_site)

    manifest = Manifest(
        snapshot_date=snapshot_date,
        record_count=len(deduped.kept),
        pipeline_version=__version__,
        config_checksums=dict(sorted(config.checksums.items())),
        counters=counters,
    )
    return CorpusSnapshot(manifest, deduped.kept)


def build_from_source(
    source: IngestSource, config: NormalizationConfig, snapshot_date: dt.date, workers: int = 1
) -> CorpusSnapshot:
    """Ingest ``source`` and build a snapshot, recording ingest counters in the manifest."""
    stats = IngestStats()
    snapshot = build_snapshot(ingest(source, stats), config, snapshot_date, workers)
    snapshot.manifest.counters["ingest_failed"] = stats.failed
    snapshot.manifest.counters["robots_excluded"] = stats.robots_excluded
    snapshot.manifest.counters["unmapped_files"] = stats.unmapped
    return snapshot
