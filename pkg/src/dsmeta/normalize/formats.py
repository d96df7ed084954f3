"""Download normalization and content-category bucketing."""

from __future__ import annotations

import logging
import posixpath
import re
from enum import Enum
from urllib.parse import unquote, urlsplit

from dsmeta.model import RawDatasetRecord, RawEntity
from dsmeta.vocab import DCAT, DCTERMS, SCHEMA

log = logging.getLogger(__name__)


class ContentCategory(str, Enum):
    TABLES = "Tables"
    STRUCTURED = "Structured"
    DOCUMENTS = "Documents"
    IMAGES = "Images"
    ARCHIVES = "Archives"
    TEXT = "Text"
    GEOSPATIAL = "Geospatial"
    COMPUTATIONAL_BIOLOGY = "ComputationalBiology"
    AUDIO = "Audio"
    VIDEO = "Video"
    PRESENTATIONS = "Presentations"
    MEDICAL_IMAGING = "MedicalImaging"
    OTHER = "Other"


URL_PREDICATES = (
    SCHEMA + "contentUrl",
    DCAT + "downloadURL",
    SCHEMA + "url",
    DCAT + "accessURL",
)
FORMAT_PREDICATES = (SCHEMA + "fileFormat",)
ENCODING_PREDICATES = (
    SCHEMA + "encodingType",
    SCHEMA + "encodingFormat",
    DCAT + "mediaType",
    DCTERMS + "format",
)

# extensions made of several dot-separated parts
_COMPOUND_EXTENSIONS = ("tar.gz", "nii.gz", "tar.bz2", "tar.xz")
_EXTENSION_RE = re.compile(r"^[a-z0-9][a-z0-9+_-]{0,9}$")


def parse_format_buckets(text: str) -> dict[str, ContentCategory]:
    table: dict[str, ContentCategory] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        key, sep, category = line.partition("\t")
        try:
            cat = ContentCategory(category.strip())
        except ValueError:
            raise ValueError(f"line {lineno}: unknown category {category!r}") from None
        key = key.strip().lower()
        if not sep or not key:
            raise ValueError(f"line {lineno}: expected key<TAB>category")
        if key in table and table[key] is not cat:
            raise ValueError(f"line {lineno}: {key!r} mapped twice")
        table[key] = cat
    return table


def clean_format(value: str) -> str:
    """Lower-case and strip MIME parameters: ``text/CSV; charset=utf-8`` -> ``text/csv``."""
    return value.split(";", 1)[0].strip().lower()


def url_extension(url: str) -> str:
    path = unquote(urlsplit(url).path).lower()
    name = posixpath.basename(path)
    for compound in _COMPOUND_EXTENSIONS:
        if name.endswith("." + compound):
            return compound
    if "." not in name:
        return ""
    ext = name.rsplit(".", 1)[1]
    return ext if _EXTENSION_RE.match(ext) else ""


def _format_text(values: list) -> str:
    for v in values:
        if isinstance(v, RawEntity):
            names = v.texts(SCHEMA + "name", SCHEMA + "encodingFormat")
            v = names[0] if names else ""
        if v and v.strip():
            return clean_format(v)
    return ""


def normalize_downloads(raw: RawDatasetRecord) -> list[tuple[str, str]]:
    """One ``(download_url, raw_format)`` pair per distribution."""
    out = []
    for value in raw.get("data_download"):
        if isinstance(value, RawEntity):
            urls = [u.strip() for u in value.texts(*URL_PREDICATES) if u.strip()]
            url = urls[0] if urls else ""
            fmt = _format_text(value.values(*FORMAT_PREDICATES))
            if not fmt:
                fmt = _format_text(value.values(*ENCODING_PREDICATES))
        else:
            url, fmt = value.strip(), ""
        if not fmt and url:
            fmt = url_extension(url)
        if not url and not fmt:
            log.debug("dropping distribution without URL or format on %s", raw.page_url)
            continue
        out.append((url, fmt))
    return out


def bucket_format(raw_format: str, buckets: dict[str, ContentCategory]) -> ContentCategory:
    fmt = clean_format(raw_format).lstrip(".")
    if not fmt:
        return ContentCategory.OTHER
    if fmt in buckets:
        return buckets[fmt]
    if "/" in fmt:
        subtype = fmt.split("/", 1)[1]
        for candidate in (subtype, subtype.rsplit("+", 1)[-1], subtype.rsplit(".", 1)[-1], subtype.removeprefix("x-")):
            if candidate in buckets:
                return buckets[candidate]
    elif "." in fmt:
        ext = fmt.rsplit(".", 1)[1]
        if ext in buckets:
            return buckets[ext]
    return ContentCategory.OTHER


def is_semantic_web_format(raw_format: str, semweb: frozenset[str]) -> bool:
    return clean_format(raw_format) in semweb
