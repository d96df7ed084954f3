"""Registrable domain, top-level label and government classification of page URLs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from urllib.parse import urlsplit

import tldextract

from dsmeta.errors import InvalidURLError

# bundled public-suffix snapshot only; never fetched
_EXTRACT = tldextract.TLDExtract(suffix_list_urls=(), cache_dir=None)


@dataclass(frozen=True)
class DomainInfo:
    domain: str
    tld: str
    is_government: bool


@dataclass(frozen=True)
class GovernmentPattern:
    labels: tuple[str, ...]  # "*" matches exactly one label
    provenance: str

    @classmethod
    def parse(cls, pattern: str, provenance: str = "listed") -> GovernmentPattern:
        labels = tuple(pattern.strip().lower().strip(".").split("."))
        if not labels or not all(labels):
            raise ValueError(f"invalid government pattern {pattern!r}")
        return cls(labels, provenance)

    def matches(self, host_labels: list[str]) -> bool:
        n = len(self.labels)
        # the pattern must be preceded by at least one label of the host
        if len(host_labels) <= n:
            return False
        tail = host_labels[-n:]
        return all(p == "*" or p == h for p, h in zip(self.labels, tail))


def parse_government_patterns(text: str) -> list[GovernmentPattern]:
    out = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        pattern, _, provenance = line.partition("\t")
        out.append(GovernmentPattern.parse(pattern, provenance.strip() or "listed"))
    return out


def host_of(page_url: str) -> str:
    try:
        host = urlsplit(page_url.strip()).hostname
    except ValueError as exc:
        raise InvalidURLError(f"unparseable host in {page_url!r}: {exc}") from None
    if not host or not host.strip("."):
        raise InvalidURLError(f"unparseable host in {page_url!r}")
    return host.strip(".").lower()


@lru_cache(maxsize=65536)
def registrable_domain(host: str) -> str:
    result = _EXTRACT(host)
    return result.top_domain_under_public_suffix or host


def classify_domain(page_url: str, government: list[GovernmentPattern]) -> DomainInfo:
    host = host_of(page_url)
    labels = host.split(".")
    return DomainInfo(
        domain=registrable_domain(host),
        tld=labels[-1],
        is_government=any(p.matches(labels) for p in government),
    )
