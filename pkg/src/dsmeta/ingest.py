"""Page sources: a directory of saved HTML files or a polite sequential fetcher."""

from __future__ import annotations

import datetime as dt
import logging
import os
import time
import urllib.error
import urllib.request
import urllib.robotparser
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator
from urllib.parse import urlsplit

from dsmeta.errors import IngestError

log = logging.getLogger(__name__)

USER_AGENT = "dsmeta/0.1 (+dataset metadata research)"
HTML_SUFFIXES = (".html", ".htm", ".xhtml")


@dataclass
class Page:
    page_url: str
    html: bytes
    fetch_date: dt.date | None = None
    last_modified: str | None = None
    content_language: str | None = None


@dataclass
class IngestSource:
    kind: str  # "directory" or "url-list"
    path: Path
    url_map: Path | None = None
    delay_ms: int = 1000
    max_pages: int | None = None
    respect_robots: bool = True
    timeout: float = 20.0
    user_agent: str = USER_AGENT

    def __post_init__(self) -> None:
        self.path = Path(self.path)
        if self.kind not in ("directory", "url-list"):
            raise ValueError(f"unknown source kind {self.kind!r}")
        if self.delay_ms < 0:
            raise ValueError("delay_ms must be >= 0")
        if self.kind == "directory":
            # defaults to urls.tsv inside the directory
            self.url_map = Path(self.url_map) if self.url_map is not None else self.path / "urls.tsv"


@dataclass
class IngestStats:
    yielded: int = 0
    failed: int = 0
    robots_excluded: int = 0
    unmapped: int = 0
    diagnostics: list[str] = field(default_factory=list)


def read_url_map(path: Path) -> dict[str, tuple[str, str | None]]:
    """``file-path<TAB>URL[<TAB>last-modified]``; paths relative to the map's directory."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read url-map {path}: {exc.strerror}") from None
    mapping: dict[str, tuple[str, str | None]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise IngestError(f"{path}:{lineno}: expected file-path<TAB>URL")
        modified = parts[2].strip() if len(parts) > 2 and parts[2].strip() else None
        mapping[os.path.normpath(parts[0].strip())] = (parts[1].strip(), modified)
    return mapping


def _iter_directory(
    source: IngestSource, stats: IngestStats, url_map: dict[str, tuple[str, str | None]]
) -> Iterator[Page]:
    root = source.path
    files = sorted(
        p.relative_to(root).as_posix() for p in root.rglob("*") if p.is_file() and p.suffix.lower() in HTML_SUFFIXES
    )
    for rel in files:
        if source.max_pages is not None and stats.yielded >= source.max_pages:
            return
        entry = url_map.get(os.path.normpath(rel))
        if entry is None:
            stats.unmapped += 1
            stats.diagnostics.append(f"no URL for {rel}; skipped")
            log.warning("no URL for %s; skipped", rel)
            continue
        url, modified = entry
        stats.yielded += 1
        yield Page(url, (root / rel).read_bytes(), None, modified)


class _Robots:
    def __init__(self, user_agent: str, timeout: float):
        self.user_agent = user_agent
        self.timeout = timeout
        self.cache: dict[str, urllib.robotparser.RobotFileParser | None] = {}

    def allowed(self, url: str) -> bool:
        parts = urlsplit(url)
        origin = f"{parts.scheme}://{parts.netloc}"
        if origin not in self.cache:
            parser = urllib.robotparser.RobotFileParser(origin + "/robots.txt")
            try:
                req = urllib.request.Request(origin + "/robots.txt", headers={"User-Agent": self.user_agent})
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    parser.parse(resp.read().decode("utf-8", "replace").splitlines())
            except urllib.error.HTTPError as exc:
                # 4xx: no restrictions; 5xx: treat as fully disallowed
                parser.disallow_all = exc.code >= 500
                parser.allow_all = exc.code < 500
            except (urllib.error.URLError, OSError):
                parser.allow_all = True
            self.cache[origin] = parser
        parser = self.cache[origin]
        return parser is None or parser.can_fetch(self.user_agent, url)


def _iter_urls(source: IngestSource, stats: IngestStats, urls: list[str]) -> Iterator[Page]:
    robots = _Robots(source.user_agent, source.timeout) if source.respect_robots else None
    first = True
    for url in urls:
        if source.max_pages is not None and stats.yielded >= source.max_pages:
            return
        if robots is not None and not robots.allowed(url):
            stats.robots_excluded += 1
            stats.diagnostics.append(f"robots.txt excludes {url}")
            log.info("robots.txt excludes %s", url)
            continue
        if not first and source.delay_ms:
            time.sleep(source.delay_ms / 1000)
        first = False
        req = urllib.request.Request(url, headers={"User-Agent": source.user_agent})
        try:
            with urllib.request.urlopen(req, timeout=source.timeout) as resp:
                body = resp.read()
                page = Page(
                    url,
                    body,
                    dt.date.today(),
                    resp.headers.get("Last-Modified"),
                    resp.headers.get("Content-Language"),
                )
        except urllib.error.HTTPError as exc:
            stats.failed += 1
            stats.diagnostics.append(f"HTTP {exc.code} for {url}; skipped")
            log.warning("HTTP %s for %s; skipped", exc.code, url)
            continue
        except (urllib.error.URLError, OSError, ValueError) as exc:
            stats.failed += 1
            stats.diagnostics.append(f"fetch failed for {url}: {exc}; skipped")
            log.warning("fetch failed for %s: %s", url, exc)
            continue
        stats.yielded += 1
        yield page


def ingest(source: IngestSource, stats: IngestStats | None = None) -> Iterator[Page]:
    """Yield pages in deterministic order (sorted paths, or list order)."""
    stats = stats if stats is not None else IngestStats()
    if source.kind == "directory":
        if not source.path.is_dir():
            raise IngestError(f"source directory not found: {source.path}")
        if not source.url_map.is_file():
            raise IngestError(f"directory sources require a url-map; {source.url_map} not found")
        return _iter_directory(source, stats, read_url_map(source.url_map))
    try:
        lines = source.path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IngestError(f"cannot read url-list {source.path}: {exc.strerror}") from None
    urls = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    return _iter_urls(source, stats, urls)
