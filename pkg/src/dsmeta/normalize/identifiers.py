"""DOI and compact-identifier extraction."""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import unquote

from dsmeta.model import RawDatasetRecord, RawEntity
from dsmeta.vocab import SCHEMA

DOI_RE = re.compile(r"(?<![0-9A-Za-z.])10\.\d{4,9}/[^\s\"'<>]+")
IDENTIFIERS_ORG_RE = re.compile(
    r"https?://(?:www\.)?identifiers\.org/([A-Za-z0-9._]+)(?::|/)([^\s\"'<>]+)", re.IGNORECASE
)
COMPACT_RE = re.compile(r"(?<![A-Za-z0-9._:/@-])([A-Za-z0-9._]+):([A-Za-z0-9][^\s\"'<>]*)")
PREFIX_RE = re.compile(r"^[a-z0-9._]+$")

_TRAILING = ".,;:)]}'\""
SCANNED_PROPERTIES = ("identifier", "url", "same_as", "alternate_name")


@dataclass(frozen=True)
class PrefixRegistry:
    prefixes: dict[str, str]

    def __post_init__(self) -> None:
        for p in self.prefixes:
            if not PREFIX_RE.match(p):
                raise ValueError(f"invalid prefix {p!r}")

    def __contains__(self, prefix: str) -> bool:
        return prefix.lower() in self.prefixes


def parse_prefix_registry(text: str) -> PrefixRegistry:
    prefixes: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        prefix, _, namespace = line.partition("\t")
        prefix = prefix.strip()
        if prefix in prefixes:
            raise ValueError(f"line {lineno}: duplicate prefix {prefix!r}")
        if not PREFIX_RE.match(prefix):
            raise ValueError(f"line {lineno}: invalid prefix {prefix!r}")
        prefixes[prefix] = namespace.strip()
    return PrefixRegistry(prefixes)


def _trim(value: str) -> str:
    return value.rstrip(_TRAILING)


def find_dois(text: str) -> list[str]:
    text = unquote(text)
    return [doi for doi in (_trim(m.group(0)) for m in DOI_RE.finditer(text)) if DOI_RE.fullmatch(doi)]


def find_compact_ids(text: str, registry: PrefixRegistry) -> list[str]:
    found = []
    for m in IDENTIFIERS_ORG_RE.finditer(text):
        accession = _trim(unquote(m.group(2)))
        if accession:
            found.append(f"{m.group(1).lower()}:{accession}")
    remainder = IDENTIFIERS_ORG_RE.sub(" ", text)
    for m in COMPACT_RE.finditer(remainder):
        prefix = m.group(1).lower()
        accession = _trim(m.group(2))
        if prefix in registry and accession:
            found.append(f"{prefix}:{accession}")
    return found


def _strings(value, registry: PrefixRegistry) -> list[str]:
    if isinstance(value, str):
        return [value]
    # PropertyValue{propertyID: "pdb", value: "1abc"} style identifiers
    out = []
    prop_ids = [p.strip().lower() for p in value.texts(SCHEMA + "propertyID")]
    for v in value.texts(SCHEMA + "value"):
        out.append(v)
        for pid in prop_ids:
            if pid == "doi" and not DOI_RE.search(v):
                continue
            if pid in registry and ":" not in v:
                out.append(f"{pid}:{v.strip()}")
    out.extend(value.texts(SCHEMA + "url", SCHEMA + "name", SCHEMA + "identifier"))
    return out


def _unique(values: list[str], key) -> list[str]:
    seen = set()
    out = []
    for v in values:
        k = key(v)
        if k not in seen:
            seen.add(k)
            out.append(v)
    return out


def extract_identifiers(raw: RawDatasetRecord, registry: PrefixRegistry) -> dict[str, list[str]]:
    dois: list[str] = []
    compact: list[str] = []
    for name in SCANNED_PROPERTIES:
        for value in raw.get(name):
            for text in _strings(value, registry) if isinstance(value, RawEntity) else [value]:
                dois.extend(find_dois(text))
                compact.extend(find_compact_ids(text, registry))
    return {
        "dois": _unique(dois, str.lower),
        "compact_ids": _unique(compact, lambda c: c),
    }
