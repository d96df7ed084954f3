"""Dataset metadata extraction, normalization and corpus analytics."""

__version__ = "0.1.0"

from dsmeta.errors import (
    AnalyticsError,
    ConfigError,
    DsmetaError,
    IngestError,
    InvalidURLError,
    PowerLawError,
    SnapshotError,
)

__all__ = [
    "__version__",
    "AnalyticsError",
    "ConfigError",
    "DsmetaError",
    "IngestError",
    "InvalidURLError",
    "PowerLawError",
    "SnapshotError",
]
