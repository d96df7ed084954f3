from dsmeta.analytics.powerlaw import PowerLawFit, fit_power_law, pareto_sample
from dsmeta.analytics.report import (
    AnalyticsReport,
    Table,
    build_report,
    render_csv,
    render_markdown,
    report_tables,
    write_report,
)
from dsmeta.analytics.stats import (
    ChurnResult,
    compute_churn,
    domain_size_distribution,
    format_and_identifier_stats,
    format_stats,
    identifier_stats,
    language_breakdown,
    openness_stats,
    page_cardinality_stats,
    property_coverage,
    provider_stats,
    recency_histograms,
    tld_and_government,
    topic_distribution,
    usage_topic_distribution,
    vocabulary_share,
)

__all__ = [
    "AnalyticsReport",
    "ChurnResult",
    "PowerLawFit",
    "Table",
    "build_report",
    "compute_churn",
    "domain_size_distribution",
    "fit_power_law",
    "format_and_identifier_stats",
    "format_stats",
    "identifier_stats",
    "language_breakdown",
    "openness_stats",
    "page_cardinality_stats",
    "pareto_sample",
    "property_coverage",
    "provider_stats",
    "recency_histograms",
    "render_csv",
    "render_markdown",
    "report_tables",
    "tld_and_government",
    "topic_distribution",
    "usage_topic_distribution",
    "vocabulary_share",
    "write_report",
]
