from __future__ import annotations


class DsmetaError(Exception):
    """Base class for fatal input errors (CLI exit code 1)."""


class ConfigError(DsmetaError):
    """Configuration could not be loaded or failed its checksum (exit code 2)."""


class SnapshotError(DsmetaError):
    """A snapshot on disk is malformed, truncated or inconsistent."""


class IngestError(DsmetaError):
    pass


class AnalyticsError(DsmetaError):
    pass


class InvalidURLError(DsmetaError, ValueError):
    """The URL has no parseable host."""


class PowerLawError(AnalyticsError, ValueError):
    pass
