"""Property-level cleanup and derivations that turn raw records into canonical ones."""

from __future__ import annotations

import datetime as dt

from dsmeta.model import (
    Dates,
    DatasetRecord,
    Download,
    LicenseInfo,
    RawDatasetRecord,
    RawEntity,
    RawValue,
)
from dsmeta.normalize.dates import parse_date, resolve_last_updated
from dsmeta.normalize.domains import DomainInfo, classify_domain
from dsmeta.normalize.formats import ContentCategory, bucket_format, is_semantic_web_format, normalize_downloads
from dsmeta.normalize.identifiers import PrefixRegistry, extract_identifiers
from dsmeta.normalize.language import UNKNOWN as UNKNOWN_LANGUAGE, detect_language
from dsmeta.normalize.licenses import UNKNOWN as UNKNOWN_LICENSE, LicenseClass, classify_license, compute_openness
from dsmeta.normalize.providers import canonical_provider, entity_name, resolve_provider
from dsmeta.vocab import DCTERMS, RDFS, SCHEMA, local_name

__all__ = [
    "ContentCategory",
    "DomainInfo",
    "LicenseClass",
    "PrefixRegistry",
    "UNKNOWN_LANGUAGE",
    "UNKNOWN_LICENSE",
    "bucket_format",
    "canonical_provider",
    "classify_domain",
    "classify_license",
    "compute_openness",
    "detect_language",
    "extract_identifiers",
    "is_semantic_web_format",
    "normalize_downloads",
    "normalize_record",
    "parse_date",
    "resolve_last_updated",
    "resolve_provider",
]

_TEXT_PREDICATES = (
    SCHEMA + "name",
    SCHEMA + "description",
    SCHEMA + "text",
    DCTERMS + "title",
    RDFS + "label",
)


def _clean(text: str) -> str:
    return " ".join(text.split())


def display_text(value: RawValue) -> str:
    """Best human-readable text of a raw value."""
    if isinstance(value, str):
        return _clean(value)
    for text in value.texts(*_TEXT_PREDICATES):
        if text.strip():
            return _clean(text)
    for values in value.properties.values():
        for v in values:
            if isinstance(v, str) and v.strip():
                return _clean(v)
    return local_name(value.types[0]) if value.types else ""


def _texts(values: list[RawValue]) -> list[str]:
    out: list[str] = []
    for v in values:
        text = display_text(v)
        if text and text not in out:
            out.append(text)
    return out


def _first(values: list[RawValue]) -> str:
    texts = _texts(values)
    return texts[0] if texts else ""


def _keywords(values: list[RawValue]) -> list[str]:
    out: list[str] = []
    for v in values:
        pieces = v.split(",") if isinstance(v, str) else [display_text(v)]
        for piece in pieces:
            piece = _clean(piece)
            if piece and piece not in out:
                out.append(piece)
    return out


def _tri_state(values: list[RawValue]) -> bool | None:
    for v in values:
        if isinstance(v, str):
            flag = v.strip().lower().rsplit("/", 1)[-1]
            if flag in ("true", "1", "yes"):
                return True
            if flag in ("false", "0", "no"):
                return False
    return None


def _latest(values: list[RawValue], order: str) -> dt.date | None:
    parsed = [parse_date(v, order) for v in values if isinstance(v, str)]
    parsed = [d for d in parsed if d is not None]
    return max(parsed) if parsed else None


def _license_values(raw: RawDatasetRecord) -> list[str]:
    values: list[RawValue] = list(raw.get("license"))
    for dist in raw.get("data_download"):
        if isinstance(dist, RawEntity):
            values.extend(dist.values(SCHEMA + "license", DCTERMS + "license"))
    out: list[str] = []
    for v in values:
        if isinstance(v, RawEntity):
            texts = v.texts(SCHEMA + "url", SCHEMA + "name", RDFS + "label")
            text = " ".join(t.strip() for t in texts if t.strip()) or (
                v.node if not v.node.startswith("_:") else ""
            )
        else:
            text = _clean(v)
        if text and text not in out:
            out.append(text)
    return out


def _person_names(values: list[RawValue]) -> list[str]:
    out: list[str] = []
    for v in values:
        name = entity_name(v)
        if name and _clean(name) and _clean(name) not in out:
            out.append(_clean(name))
    return out


def normalize_record(
    raw: RawDatasetRecord,
    config,
    *,
    page_dataset_count: int = 1,
    language: str = UNKNOWN_LANGUAGE,
    page_modified: dt.date | None = None,
) -> DatasetRecord:
    """Build the canonical record; ``id`` is filled in from the dataset key and domain."""
    from dsmeta.dedup import record_id

    domain = classify_domain(raw.page_url, config.government)
    order = config.date_order

    providers = resolve_provider(raw.get("provider"))
    if not providers:
        # creator stands in for provider only when publisher/provider are absent
        providers = resolve_provider(raw.by_predicate.get(SCHEMA + "creator", []))

    downloads = [
        Download(url, fmt, bucket_format(fmt, config.format_buckets).value)
        for url, fmt in normalize_downloads(raw)
    ]
    licenses = []
    for text in _license_values(raw):
        cls = classify_license(text, config.license_rules)
        licenses.append(LicenseInfo(text, cls.class_id, cls.allows_redistribution, cls.allows_commercial))
    free = _tri_state(raw.get("is_accessible_for_free"))
    ids = extract_identifiers(raw, config.prefixes)
    dates = Dates(
        created=_latest(raw.get("date_created"), order),
        published=_latest(raw.get("date_published"), order),
        modified=_latest(raw.get("date_modified"), order),
        page_modified=page_modified,
    )

    record = DatasetRecord(
        id="",
        page_url=raw.page_url,
        entity_index=raw.entity_index,
        page_dataset_count=page_dataset_count,
        domain=domain.domain,
        tld=domain.tld,
        is_government=domain.is_government,
        language=language,
        title=_first(raw.get("title")),
        description=_first(raw.get("description")),
        providers=providers,
        keywords=_keywords(raw.get("keywords")),
        url=_first(raw.get("url")),
        temporal_coverage=_first(raw.get("temporal_coverage")),
        spatial_coverage=_first(raw.get("spatial_coverage")),
        downloads=downloads,
        licenses=licenses,
        is_accessible_for_free=free,
        is_open=compute_openness(
            [LicenseClass(lic.license_class, lic.allows_redistribution, lic.allows_commercial) for lic in licenses],
            free,
        ),
        dois=ids["dois"],
        compact_ids=ids["compact_ids"],
        dates=dates,
        last_updated=resolve_last_updated(dates.created, dates.published, dates.modified, dates.page_modified),
        catalog=_texts(raw.get("catalog")),
        variables=_texts(raw.get("variable")),
        authors=_person_names(raw.get("authors")),
        same_as=_texts(raw.get("same_as")),
        alternate_names=_texts(raw.get("alternate_name")),
        topics=[],
        source_vocabulary=raw.source_vocabulary,
    )
    record.id = record_id(record)
    return record

