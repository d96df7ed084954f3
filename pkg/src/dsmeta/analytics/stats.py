"""Corpus statistics over snapshots.

Every operation accepts a :class:`~dsmeta.store.CorpusSnapshot` or a plain
sequence of records, and is a pure function of its inputs.  Each share names
its denominator in the field or docstring.
"""

from __future__ import annotations

import datetime as dt
import calendar
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from dsmeta.errors import AnalyticsError
from dsmeta.model import DatasetRecord
from dsmeta.normalize.formats import ContentCategory, is_semantic_web_format
from dsmeta.store import CorpusSnapshot

Corpus = Union[CorpusSnapshot, Sequence[DatasetRecord]]

NO_TOPIC = "(none)"
MONTHLY_BINS = 12
YEARLY_BINS = 5


def records_of(corpus: Corpus) -> list[DatasetRecord]:
    if isinstance(corpus, CorpusSnapshot):
        return corpus.records
    return list(corpus)


def _share(part: int, whole: int) -> float:
    return part / whole if whole else 0.0


def _ranked(counts: Counter) -> list[tuple[str, int]]:
    """Count descending, then key ascending: a total, deterministic order."""
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


# -- domains ---------------------------------------------------------------


@dataclass
class DomainDistribution:
    counts: list[tuple[str, int]]  # ranked
    total: int
    top_k: int
    top: list[tuple[str, int, float]]  # (domain, count, share of all datasets)
    top_share: float

    def as_dict(self) -> dict[str, int]:
        return dict(self.counts)


def domain_size_distribution(corpus: Corpus, top_k: int = 10) -> DomainDistribution:
    records = records_of(corpus)
    if not records:
        raise AnalyticsError("domain size distribution of an empty snapshot is undefined")
    counts = _ranked(Counter(r.domain for r in records))
    total = len(records)
    top = [(d, c, c / total) for d, c in counts[:top_k]]
    return DomainDistribution(counts, total, top_k, top, sum(c for _, c, _ in top) / total)


@dataclass
class PageCardinality:
    total: int
    single_page_count: int
    single_page_fraction: float  # datasets on pages with exactly one dataset / all datasets
    gt10_count: int  # datasets on pages with more than ten datasets


def page_cardinality_stats(corpus: Corpus) -> PageCardinality:
    records = records_of(corpus)
    single = sum(1 for r in records if r.page_dataset_count == 1)
    gt10 = sum(1 for r in records if r.page_dataset_count > 10)
    return PageCardinality(len(records), single, _share(single, len(records)), gt10)


@dataclass
class TldStats:
    counts: list[tuple[str, int]]  # over all datasets
    government_count: int
    total: int


def tld_and_government(corpus: Corpus) -> TldStats:
    records = records_of(corpus)
    return TldStats(
        _ranked(Counter(r.tld for r in records)),
        sum(1 for r in records if r.is_government),
        len(records),
    )


# -- language / vocabulary -------------------------------------------------


@dataclass
class LanguageRow:
    language: str
    count: int
    share: float
    previous: int | None = None
    pct_change: float | None = None  # percent; None when absent from the comparison snapshot


@dataclass
class LanguageBreakdown:
    rows: list[LanguageRow]
    total: int
    previous_total: int | None = None


def language_breakdown(corpus: Corpus, older: Corpus | None = None) -> LanguageBreakdown:
    records = records_of(corpus)
    counts = Counter(r.language for r in records)
    old_counts = Counter(r.language for r in records_of(older)) if older is not None else None
    rows = []
    for lang, count in _ranked(counts):
        row = LanguageRow(lang, count, _share(count, len(records)))
        if old_counts is not None:
            row.previous = old_counts.get(lang, 0)
            if row.previous:
                row.pct_change = 100.0 * (count - row.previous) / row.previous
        rows.append(row)
    return LanguageBreakdown(rows, len(records), None if older is None else len(records_of(older)))


VOCABULARIES = ("schema.org", "dcat", "mixed")


def vocabulary_share(corpus: Corpus) -> list[tuple[str, int, float]]:
    records = records_of(corpus)
    counts = Counter(r.source_vocabulary for r in records)
    return [(v, counts.get(v, 0), _share(counts.get(v, 0), len(records))) for v in VOCABULARIES]


# -- property coverage -------------------------------------------------------

# canonical property -> presence test on the normalized record
PROPERTY_PRESENCE = {
    "description": lambda r: bool(r.description),
    "title": lambda r: bool(r.title),
    "provider": lambda r: bool(r.providers),
    "keywords": lambda r: bool(r.keywords),
    "url": lambda r: bool(r.url),
    "temporal_coverage": lambda r: bool(r.temporal_coverage),
    "data_download": lambda r: bool(r.downloads),
    "spatial_coverage": lambda r: bool(r.spatial_coverage),
    "date_modified": lambda r: r.dates.modified is not None,
    "license": lambda r: bool(r.licenses),
    "date_published": lambda r: r.dates.published is not None,
    "catalog": lambda r: bool(r.catalog),
    "variable": lambda r: bool(r.variables),
    "authors": lambda r: bool(r.authors),
    "same_as": lambda r: bool(r.same_as),
    "date_created": lambda r: r.dates.created is not None,
    "alternate_name": lambda r: bool(r.alternate_names),
    "is_accessible_for_free": lambda r: r.is_accessible_for_free is not None,
}


@dataclass
class CoverageRow:
    property: str
    count: int
    percentage: float  # 0..100 over all datasets


def property_coverage(corpus: Corpus) -> list[CoverageRow]:
    """Rows sorted by percentage descending, ties in canonical-property order."""
    records = records_of(corpus)
    rows = []
    for name, present in PROPERTY_PRESENCE.items():
        count = sum(1 for r in records if present(r))
        rows.append(CoverageRow(name, count, 100.0 * _share(count, len(records))))
    order = {name: i for i, name in enumerate(PROPERTY_PRESENCE)}
    return sorted(rows, key=lambda row: (-row.count, order[row.property]))


# -- formats and identifiers -------------------------------------------------


@dataclass
class FormatStats:
    download_bearing: int  # base of every share below
    categories: list[tuple[str, int, float]]  # datasets with >= 1 download in the category
    semantic_web_count: int
    semantic_web_share: float


def format_stats(corpus: Corpus, semweb_formats: frozenset[str] = frozenset()) -> FormatStats:
    records = [r for r in records_of(corpus) if r.downloads]
    per_category: Counter = Counter()
    semweb = 0
    for r in records:
        for cat in {d.category for d in r.downloads}:
            per_category[cat] += 1
        if any(is_semantic_web_format(d.raw_format, semweb_formats) for d in r.downloads):
            semweb += 1
    base = len(records)
    cats = [(c.value, per_category.get(c.value, 0), _share(per_category.get(c.value, 0), base)) for c in ContentCategory]
    return FormatStats(base, cats, semweb, _share(semweb, base))


@dataclass
class IdentifierStats:
    total: int
    doi_count: int  # datasets with at least one DOI
    doi_share: float  # over all datasets
    doi_by_domain: list[tuple[str, int]]
    compact_id_count: int
    compact_id_share: float
    compact_by_domain: list[tuple[str, int]]


def identifier_stats(corpus: Corpus) -> IdentifierStats:
    records = records_of(corpus)
    doi = Counter(r.domain for r in records if r.dois)
    compact = Counter(r.domain for r in records if r.compact_ids)
    n_doi, n_compact = sum(doi.values()), sum(compact.values())
    return IdentifierStats(
        len(records),
        n_doi,
        _share(n_doi, len(records)),
        _ranked(doi),
        n_compact,
        _share(n_compact, len(records)),
        _ranked(compact),
    )


def format_and_identifier_stats(
    corpus: Corpus, semweb_formats: frozenset[str] = frozenset()
) -> tuple[FormatStats, IdentifierStats]:
    return format_stats(corpus, semweb_formats), identifier_stats(corpus)


# -- providers ---------------------------------------------------------------


@dataclass
class ProviderStats:
    total: int
    with_provider: int
    provider_count: int
    top_k: int
    top: list[tuple[str, int]]
    topk_share: float  # datasets of the top-k providers / all datasets
    small_limit: int
    small_provider_count: int
    small_provider_fraction: float  # providers with < small_limit datasets / all providers


def provider_stats(corpus: Corpus, top_k: int = 20, small_limit: int = 10) -> ProviderStats:
    """Each dataset is attributed to its first (primary) provider."""
    records = records_of(corpus)
    counts = Counter(r.providers[0] for r in records if r.providers)
    ranked = _ranked(counts)
    top = ranked[:top_k]
    small = sum(1 for c in counts.values() if c < small_limit)
    return ProviderStats(
        total=len(records),
        with_provider=sum(counts.values()),
        provider_count=len(counts),
        top_k=top_k,
        top=top,
        topk_share=_share(sum(c for _, c in top), len(records)),
        small_limit=small_limit,
        small_provider_count=small,
        small_provider_fraction=_share(small, len(counts)),
    )


# -- openness ----------------------------------------------------------------


@dataclass
class OpennessStats:
    total: int
    licensed: int
    license_coverage: float  # licensed / all datasets
    recognized: int
    recognized_share: float  # recognized-license / licensed
    open_count: int
    open_share: float  # open / recognized-license datasets
    commercial_count: int
    commercial_share: float  # commercial-reuse-allowed / open datasets within the recognized base
    open_overall: int
    open_overall_share: float  # open / all datasets


def _recognized(r: DatasetRecord) -> bool:
    return any(lic.license_class != "unknown" for lic in r.licenses)


def openness_stats(corpus: Corpus) -> OpennessStats:
    records = records_of(corpus)
    licensed = [r for r in records if r.licenses]
    recognized = [r for r in licensed if _recognized(r)]
    open_ = [r for r in recognized if r.is_open]
    commercial = [r for r in open_ if any(lic.allows_commercial for lic in r.licenses)]
    overall = sum(1 for r in records if r.is_open)
    return OpennessStats(
        len(records),
        len(licensed),
        _share(len(licensed), len(records)),
        len(recognized),
        _share(len(recognized), len(licensed)),
        len(open_),
        _share(len(open_), len(recognized)),
        len(commercial),
        _share(len(commercial), len(open_)),
        overall,
        _share(overall, len(records)),
    )


# -- recency -----------------------------------------------------------------


def shift_months(day: dt.date, months: int) -> dt.date:
    """``day`` moved back by ``months`` calendar months, clamping the day of month."""
    index = day.year * 12 + (day.month - 1) - months
    year, month = divmod(index, 12)
    month += 1
    return dt.date(year, month, min(day.day, calendar.monthrange(year, month)[1]))


def _bin(day: dt.date, reference: dt.date, bins: int, months_per_bin: int) -> int:
    """Bin k holds reference - (k+1) units < day <= reference - k units; ``bins`` is overflow."""
    if day > reference:
        return 0  # future-dated metadata counts as current
    for k in range(bins):
        if day > shift_months(reference, (k + 1) * months_per_bin):
            return k
    return bins


@dataclass
class Histogram:
    counts: list[int]  # newest bin first
    older: int  # dated records beyond the window
    shares: list[float]  # over dated records


@dataclass
class RecencyStats:
    reference_date: dt.date
    total: int
    dated: int
    known_date_share: float  # dated / all datasets
    monthly: Histogram
    yearly: Histogram


def _histogram(dates: list[dt.date], reference: dt.date, bins: int, months_per_bin: int) -> Histogram:
    counts = [0] * (bins + 1)
    for d in dates:
        counts[_bin(d, reference, bins, months_per_bin)] += 1
    return Histogram(counts[:bins], counts[bins], [_share(c, len(dates)) for c in counts[:bins]])


def recency_histograms(corpus: Corpus, reference_date: dt.date) -> RecencyStats:
    records = records_of(corpus)
    dates = [r.last_updated for r in records if r.last_updated is not None]
    return RecencyStats(
        reference_date,
        len(records),
        len(dates),
        _share(len(dates), len(records)),
        _histogram(dates, reference_date, MONTHLY_BINS, 1),
        _histogram(dates, reference_date, YEARLY_BINS, 12),
    )


# -- churn -------------------------------------------------------------------


@dataclass
class ChurnResult:
    old_count: int
    new_count: int
    retained: int
    disappeared: int
    new: int
    retention_share: float  # retained / old


def page_urls(corpus: Corpus) -> set[str]:
    return {r.page_url for r in records_of(corpus)}


def compute_churn(old: Corpus | Iterable[str], new: Corpus | Iterable[str]) -> ChurnResult:
    """Set membership on exact page URLs; accepts snapshots or URL collections."""
    a = _url_set(old)
    b = _url_set(new)
    retained = len(a & b)
    return ChurnResult(len(a), len(b), retained, len(a - b), len(b - a), _share(retained, len(a)))


def _url_set(corpus) -> set[str]:
    if isinstance(corpus, CorpusSnapshot):
        return page_urls(corpus)
    items = list(corpus)
    if items and isinstance(items[0], DatasetRecord):
        return page_urls(items)
    return set(items)


# -- topics ------------------------------------------------------------------


def primary_topic(record: DatasetRecord) -> str:
    return record.topics[0].topic if record.topics else NO_TOPIC


@dataclass
class TopicDistribution:
    base: int
    rows: list[tuple[str, int, float]]


def topic_distribution(corpus: Corpus) -> TopicDistribution:
    """Primary (highest-scoring) topic per dataset, "(none)" for untagged ones."""
    records = records_of(corpus)
    counts = Counter(primary_topic(r) for r in records)
    return TopicDistribution(len(records), [(t, c, _share(c, len(records))) for t, c in _ranked(counts)])


@dataclass
class UsageDistribution:
    log_entries: int
    distinct_ids: int
    matched: int
    unknown_count: int  # distinct ids not present in the snapshot
    rows: list[tuple[str, int, float]]  # shares over distinct matched datasets


def usage_topic_distribution(result_log: Iterable[str], corpus: Corpus) -> UsageDistribution:
    entries = [i.strip() for i in result_log if i and i.strip()]
    if not entries:
        raise AnalyticsError("usage log is empty")
    distinct = list(dict.fromkeys(entries))
    by_id = {r.id: r for r in records_of(corpus)}
    matched = [by_id[i] for i in distinct if i in by_id]
    counts = Counter(primary_topic(r) for r in matched)
    return UsageDistribution(
        len(entries),
        len(distinct),
        len(matched),
        len(distinct) - len(matched),
        [(t, c, _share(c, len(matched))) for t, c in _ranked(counts)],
    )
