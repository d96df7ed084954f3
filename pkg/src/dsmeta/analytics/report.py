"""Assemble an :class:`AnalyticsReport` and render it as Markdown or CSV tables."""

from __future__ import annotations

import csv
import datetime as dt
import io
import os
from dataclasses import dataclass, field
from pathlib import Path

from dsmeta.analytics.powerlaw import PowerLawFit, fit_power_law
from dsmeta.analytics.stats import (
    ChurnResult,
    CoverageRow,
    DomainDistribution,
    FormatStats,
    IdentifierStats,
    LanguageBreakdown,
    OpennessStats,
    PageCardinality,
    ProviderStats,
    RecencyStats,
    TldStats,
    TopicDistribution,
    compute_churn,
    domain_size_distribution,
    format_stats,
    identifier_stats,
    language_breakdown,
    openness_stats,
    page_cardinality_stats,
    property_coverage,
    provider_stats,
    recency_histograms,
    shift_months,
    tld_and_government,
    topic_distribution,
    vocabulary_share,
)
from dsmeta.errors import PowerLawError
from dsmeta.store import CorpusSnapshot


@dataclass
class AnalyticsReport:
    snapshot_date: dt.date
    record_count: int
    domain_distribution: DomainDistribution
    power_law: PowerLawFit | None
    power_law_error: str | None
    page_cardinality: PageCardinality
    tlds: TldStats
    languages: LanguageBreakdown
    vocabulary: list[tuple[str, int, float]]
    property_coverage: list[CoverageRow]
    formats: FormatStats
    identifiers: IdentifierStats
    providers: ProviderStats
    openness: OpennessStats
    recency: RecencyStats
    topics: TopicDistribution
    churn: ChurnResult | None = None
    compare_date: dt.date | None = None


def build_report(
    snapshot: CorpusSnapshot,
    compare: CorpusSnapshot | None = None,
    *,
    semweb_formats: frozenset[str] = frozenset(),
    top_k_domains: int = 10,
    top_k_providers: int = 20,
    small_provider_limit: int = 10,
    powerlaw_quantile: float = 0.5,
    reference_date: dt.date | None = None,
) -> AnalyticsReport:
    """All statistics for ``snapshot``; recency is measured from its snapshot date by default."""
    domains = domain_size_distribution(snapshot, top_k_domains)
    try:
        fit, fit_error = fit_power_law([c for _, c in domains.counts], powerlaw_quantile), None
    except PowerLawError as exc:
        fit, fit_error = None, str(exc)
    return AnalyticsReport(
        snapshot_date=snapshot.snapshot_date,
        record_count=len(snapshot.records),
        domain_distribution=domains,
        power_law=fit,
        power_law_error=fit_error,
        page_cardinality=page_cardinality_stats(snapshot),
        tlds=tld_and_government(snapshot),
        languages=language_breakdown(snapshot, compare),
        vocabulary=vocabulary_share(snapshot),
        property_coverage=property_coverage(snapshot),
        formats=format_stats(snapshot, semweb_formats),
        identifiers=identifier_stats(snapshot),
        providers=provider_stats(snapshot, top_k_providers, small_provider_limit),
        openness=openness_stats(snapshot),
        recency=recency_histograms(snapshot, reference_date or snapshot.snapshot_date),
        topics=topic_distribution(snapshot),
        churn=compute_churn(compare, snapshot) if compare is not None else None,
        compare_date=compare.snapshot_date if compare is not None else None,
    )


# -- tabular form ------------------------------------------------------------

# column kinds: text, int, share (fraction 0..1), pct (already 0..100), float
Column = tuple[str, str]


@dataclass
class Table:
    name: str
    title: str
    base: str
    columns: list[Column]
    rows: list[list] = field(default_factory=list)


def _fmt(value, kind: str, csv_mode: bool) -> str:
    if value is None:
        return ""
    if kind == "int":
        return str(int(value))
    if kind == "share":
        return f"{value:.6f}" if csv_mode else f"{100.0 * value:.2f}%"
    if kind == "pct":
        return f"{value:.4f}" if csv_mode else f"{value:.2f}%"
    if kind == "float":
        return f"{value:.6f}" if csv_mode else f"{value:.4f}"
    return str(value)


def _bin_labels(reference: dt.date, bins: int, months_per_bin: int) -> list[str]:
    labels = []
    for k in range(bins):
        hi = shift_months(reference, k * months_per_bin)
        lo = shift_months(reference, (k + 1) * months_per_bin)
        labels.append(f"({lo.isoformat()}, {hi.isoformat()}]")
    return labels


def report_tables(report: AnalyticsReport) -> list[Table]:
    r = report
    n = r.record_count
    tables: list[Table] = []

    summary = Table("summary", "Summary", f"all datasets ({n})", [("metric", "text"), ("value", "text")])
    dd = r.domain_distribution
    fit = r.power_law
    rows = [
        ("snapshot_date", r.snapshot_date.isoformat()),
        ("datasets", str(n)),
        ("domains", str(len(dd.counts))),
        (f"top_{dd.top_k}_domain_share", _fmt(dd.top_share, "share", False)),
        ("power_law_exponent", _fmt(fit.exponent, "float", False) if fit else f"not fitted: {r.power_law_error}"),
        ("power_law_stderr", _fmt(fit.stderr, "float", False) if fit else ""),
        ("power_law_xmin", _fmt(fit.xmin, "float", False) if fit else ""),
        ("power_law_tail_size", str(fit.n_tail) if fit else ""),
        ("power_law_ls_exponent", _fmt(fit.ls_exponent, "float", False) if fit else ""),
        ("single_dataset_page_fraction", _fmt(r.page_cardinality.single_page_fraction, "share", False)),
        ("datasets_on_pages_with_more_than_10", str(r.page_cardinality.gt10_count)),
        ("government_datasets", str(r.tlds.government_count)),
        ("download_bearing_datasets", str(r.formats.download_bearing)),
        ("semantic_web_share_of_download_bearing", _fmt(r.formats.semantic_web_share, "share", False)),
        ("known_date_share", _fmt(r.recency.known_date_share, "share", False)),
    ]
    if r.churn is not None:
        rows += [
            ("compare_snapshot_date", r.compare_date.isoformat()),
            ("urls_retained", str(r.churn.retained)),
            ("urls_disappeared", str(r.churn.disappeared)),
            ("urls_new", str(r.churn.new)),
            ("url_retention_share", _fmt(r.churn.retention_share, "share", False)),
        ]
    summary.rows = [list(row) for row in rows]
    tables.append(summary)

    t = Table(
        "domains",
        "Datasets per registrable domain",
        f"all datasets ({n})",
        [("rank", "int"), ("domain", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [[i, d, c, c / dd.total] for i, (d, c) in enumerate(dd.counts, 1)]
    tables.append(t)

    t = Table(
        "top_domains",
        f"Top {dd.top_k} domains",
        f"all datasets ({n}); combined share {_fmt(dd.top_share, 'share', False)}",
        [("rank", "int"), ("domain", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [[i, d, c, s] for i, (d, c, s) in enumerate(dd.top, 1)]
    tables.append(t)

    t = Table(
        "tlds",
        "Datasets per top-level domain",
        f"all datasets ({n}); government domains: {r.tlds.government_count}",
        [("tld", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [[tld, c, c / n] for tld, c in r.tlds.counts]
    tables.append(t)

    cols: list[Column] = [("language", "text"), ("datasets", "int"), ("share", "share")]
    base = f"all datasets ({n})"
    if r.languages.previous_total is not None:
        cols += [("previous", "int"), ("change", "pct")]
        base += f"; change vs. snapshot of {r.compare_date.isoformat()} ({r.languages.previous_total})"
    t = Table("languages", "Datasets by language", base, cols)
    for row in r.languages.rows:
        cells = [row.language, row.count, row.share]
        if r.languages.previous_total is not None:
            cells += [row.previous, row.pct_change]
        t.rows.append(cells)
    tables.append(t)

    t = Table(
        "vocabulary",
        "Source vocabulary",
        f"all datasets ({n})",
        [("vocabulary", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [list(v) for v in r.vocabulary]
    tables.append(t)

    t = Table(
        "property_coverage",
        "Datasets with each property",
        f"all datasets ({n})",
        [("property", "text"), ("datasets", "int"), ("percentage", "pct")],
    )
    t.rows = [[c.property, c.count, c.percentage] for c in r.property_coverage]
    tables.append(t)

    f = r.formats
    t = Table(
        "formats",
        "Download formats by content category",
        f"download-bearing datasets ({f.download_bearing}); a dataset counts once per category it offers",
        [("category", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [list(c) for c in f.categories]
    tables.append(t)

    ids = r.identifiers
    t = Table(
        "doi_domains",
        "Domains of datasets with DOIs",
        f"datasets with a DOI ({ids.doi_count} = {_fmt(ids.doi_share, 'share', False)} of all datasets)",
        [("domain", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [[d, c, c / ids.doi_count] for d, c in ids.doi_by_domain]
    tables.append(t)

    t = Table(
        "compact_id_domains",
        "Domains of datasets with compact identifiers",
        f"datasets with a compact identifier ({ids.compact_id_count} = "
        f"{_fmt(ids.compact_id_share, 'share', False)} of all datasets)",
        [("domain", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [[d, c, c / ids.compact_id_count] for d, c in ids.compact_by_domain]
    tables.append(t)

    p = r.providers
    t = Table(
        "providers",
        f"Top {p.top_k} providers",
        f"all datasets ({n}), each attributed to its first provider; {p.provider_count} providers, "
        f"top-{p.top_k} share {_fmt(p.topk_share, 'share', False)}, "
        f"{p.small_provider_count} providers with fewer than {p.small_limit} datasets "
        f"({_fmt(p.small_provider_fraction, 'share', False)} of providers)",
        [("rank", "int"), ("provider", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [[i, name, c, c / n] for i, (name, c) in enumerate(p.top, 1)]
    tables.append(t)

    o = r.openness
    t = Table(
        "openness",
        "Licensing and openness",
        "each row names its own base",
        [("statistic", "text"), ("datasets", "int"), ("base", "text"), ("base_size", "int"), ("share", "share")],
    )
    t.rows = [
        ["with license", o.licensed, "all datasets", o.total, o.license_coverage],
        ["recognized license", o.recognized, "datasets with a license", o.licensed, o.recognized_share],
        ["open", o.open_count, "datasets with a recognized license", o.recognized, o.open_share],
        ["commercial reuse allowed", o.commercial_count, "open datasets with a recognized license", o.open_count,
         o.commercial_share],
        ["open (any base)", o.open_overall, "all datasets", o.total, o.open_overall_share],
    ]
    tables.append(t)

    rec = r.recency
    for name, title, hist, months in (
        ("recency_monthly", "Last update, monthly over the past year", rec.monthly, 1),
        ("recency_yearly", "Last update, yearly over the past five years", rec.yearly, 12),
    ):
        labels = _bin_labels(rec.reference_date, len(hist.counts), months)
        t = Table(
            name,
            title,
            f"datasets with a known update date ({rec.dated} = {_fmt(rec.known_date_share, 'share', False)} "
            f"of all datasets); reference date {rec.reference_date.isoformat()}",
            [("bin", "int"), ("interval", "text"), ("datasets", "int"), ("share", "share")],
        )
        t.rows = [[k + 1, labels[k], c, s] for k, (c, s) in enumerate(zip(hist.counts, hist.shares))]
        t.rows.append([None, "older", hist.older, hist.older / rec.dated if rec.dated else 0.0])
        tables.append(t)

    t = Table(
        "topics",
        "Primary topic",
        f"all datasets ({r.topics.base})",
        [("topic", "text"), ("datasets", "int"), ("share", "share")],
    )
    t.rows = [list(row) for row in r.topics.rows]
    tables.append(t)
    return tables


def _escape_md(text: str) -> str:
    return text.replace("|", "\\|")


def render_markdown(report: AnalyticsReport) -> str:
    out = [f"# Corpus report — snapshot {report.snapshot_date.isoformat()}", ""]
    for table in report_tables(report):
        out.append(f"## {table.title}")
        out.append("")
        out.append(f"Base: {table.base}")
        out.append("")
        out.append("| " + " | ".join(name for name, _ in table.columns) + " |")
        out.append("|" + "|".join("---:" if kind != "text" else "---" for _, kind in table.columns) + "|")
        for row in table.rows:
            cells = [_escape_md(_fmt(v, kind, False)) for v, (_, kind) in zip(row, table.columns)]
            out.append("| " + " | ".join(cells) + " |")
        out.append("")
    return "\n".join(out)


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([name for name, _ in table.columns])
    for row in table.rows:
        writer.writerow([_fmt(v, kind, True) for v, (_, kind) in zip(row, table.columns)])
    return buf.getvalue()


def write_report(report: AnalyticsReport, directory: str | os.PathLike, fmt: str = "md") -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "md":
        path = directory / "report.md"
        path.write_text(render_markdown(report), encoding="utf-8")
        written.append(path)
    elif fmt == "csv":
        for table in report_tables(report):
            path = directory / f"{table.name}.csv"
            path.write_text(render_csv(table), encoding="utf-8")
            written.append(path)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return written
