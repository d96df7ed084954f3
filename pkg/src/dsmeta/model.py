"""Canonical dataset record and the declarative predicate-to-property mapping."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, fields
from typing import Any, Union

from dsmeta.extract.graph import EntitySubgraph, Literal, Triple
from dsmeta.vocab import (
    DCAT,
    DCTERMS,
    DC11,
    RDF_TYPE,
    SCHEMA,
    canonical_iri,
    expand_curie,
)


@dataclass(frozen=True)
class PropertyMapping:
    name: str
    predicates: tuple[str, ...]


def parse_mapping_table(text: str) -> list[PropertyMapping]:
    """Parse ``name<TAB>pred,pred,...`` lines; predicates may be CURIEs or IRIs."""
    mappings: list[PropertyMapping] = []
    owner: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, sep, preds = line.partition("\t")
        name = name.strip()
        iris = tuple(expand_curie(p) for p in preds.split(",") if p.strip())
        if not sep or not name or not iris:
            raise ValueError(f"line {lineno}: expected name<TAB>predicates")
        for iri in iris:
            if iri in owner:
                raise ValueError(f"line {lineno}: {iri} already mapped to {owner[iri]!r}")
            owner[iri] = name
        if any(m.name == name for m in mappings):
            raise ValueError(f"line {lineno}: duplicate property {name!r}")
        mappings.append(PropertyMapping(name, iris))
    return mappings


@dataclass
class RawEntity:
    """A nested entity (Organization, DataDownload, ...) carried as a raw value."""

    node: str
    types: list[str] = field(default_factory=list)
    properties: dict[str, list[RawValue]] = field(default_factory=dict)

    def values(self, *predicates: str) -> list[RawValue]:
        out: list[RawValue] = []
        for p in predicates:
            out.extend(self.properties.get(p, ()))
        return out

    def texts(self, *predicates: str) -> list[str]:
        return [v for v in self.values(*predicates) if isinstance(v, str)]


RawValue = Union[str, RawEntity]


@dataclass
class RawDatasetRecord:
    page_url: str
    entity_index: int
    source_vocabulary: str
    properties: dict[str, list[RawValue]]
    unmapped: dict[str, list[RawValue]] = field(default_factory=dict)
    root: str = ""
    # every root predicate with its values, mapped or not
    by_predicate: dict[str, list[RawValue]] = field(default_factory=dict)

    def get(self, name: str) -> list[RawValue]:
        return self.properties.get(name, [])


_DCAT_FAMILY = (DCAT, DCTERMS, DC11)


def _vocabulary_of(iri: str) -> str | None:
    if iri.startswith(SCHEMA):
        return "schema.org"
    if iri.startswith(_DCAT_FAMILY):
        return "dcat"
    return None


def _build_entity(node: str, index: dict[str, list[Triple]], path: frozenset[str]) -> RawEntity:
    entity = RawEntity(node)
    for t in index.get(node, ()):
        pred = canonical_iri(t.predicate)
        if pred == RDF_TYPE:
            if isinstance(t.object, str):
                entity.types.append(canonical_iri(t.object))
            continue
        entity.properties.setdefault(pred, []).append(_raw_value(t.object, index, path | {node}))
    return entity


def _raw_value(obj: str | Literal, index: dict[str, list[Triple]], path: frozenset[str]) -> RawValue:
    if isinstance(obj, Literal):
        return obj.text
    if obj in index and obj not in path:
        return _build_entity(obj, index, path)
    return obj


def map_entity_to_record(
    entity: EntitySubgraph, page_url: str, mappings: list[PropertyMapping], entity_index: int = 0
) -> RawDatasetRecord:
    """Populate canonical properties from source predicates, table order then document order."""
    index: dict[str, list[Triple]] = {}
    for t in entity.triples:
        index.setdefault(t.subject, []).append(t)
    root_triples = index.get(entity.root, [])
    by_pred: dict[str, list[RawValue]] = {}
    types: list[str] = []
    for t in root_triples:
        pred = canonical_iri(t.predicate)
        if pred == RDF_TYPE:
            if isinstance(t.object, str):
                types.append(canonical_iri(t.object))
            continue
        by_pred.setdefault(pred, []).append(_raw_value(t.object, index, frozenset({entity.root})))

    properties: dict[str, list[RawValue]] = {}
    mapped: set[str] = set()
    for m in mappings:
        values: list[RawValue] = []
        for pred in m.predicates:
            if pred in by_pred:
                values.extend(by_pred[pred])
                mapped.add(pred)
        properties[m.name] = values
    unmapped = {p: v for p, v in by_pred.items() if p not in mapped}

    vocabularies = {_vocabulary_of(p) for p in mapped} - {None}
    if not vocabularies:
        vocabularies = {_vocabulary_of(t) for t in types} - {None}
    if vocabularies == {"dcat"}:
        source_vocabulary = "dcat"
    elif vocabularies == {"schema.org"} or not vocabularies:
        source_vocabulary = "schema.org"
    else:
        source_vocabulary = "mixed"
    return RawDatasetRecord(page_url, entity_index, source_vocabulary, properties, unmapped, entity.root, by_pred)


# -- canonical record ----------------------------------------------------


@dataclass
class Download:
    download_url: str
    raw_format: str
    category: str


@dataclass
class LicenseInfo:
    raw: str
    license_class: str
    allows_redistribution: bool
    allows_commercial: bool


@dataclass
class Dates:
    created: dt.date | None = None
    published: dt.date | None = None
    modified: dt.date | None = None
    page_modified: dt.date | None = None


@dataclass
class TopicScore:
    topic: str
    score: float


@dataclass
class DatasetRecord:
    """One normalized dataset; field order is the on-disk key order."""

    id: str
    page_url: str
    entity_index: int
    page_dataset_count: int
    domain: str
    tld: str
    is_government: bool
    language: str
    title: str
    description: str
    providers: list[str] = field(default_factory=list)
    keywords: list[str] = field(default_factory=list)
    url: str = ""
    temporal_coverage: str = ""
    spatial_coverage: str = ""
    downloads: list[Download] = field(default_factory=list)
    licenses: list[LicenseInfo] = field(default_factory=list)
    is_accessible_for_free: bool | None = None
    is_open: bool = False
    dois: list[str] = field(default_factory=list)
    compact_ids: list[str] = field(default_factory=list)
    dates: Dates = field(default_factory=Dates)
    last_updated: dt.date | None = None
    catalog: list[str] = field(default_factory=list)
    variables: list[str] = field(default_factory=list)
    authors: list[str] = field(default_factory=list)
    same_as: list[str] = field(default_factory=list)
    alternate_names: list[str] = field(default_factory=list)
    topics: list[TopicScore] = field(default_factory=list)
    source_vocabulary: str = "schema.org"

    def to_json_dict(self) -> dict[str, Any]:
        return {f.name: _encode(getattr(self, f.name)) for f in fields(self)}

    @classmethod
    def from_json_dict(cls, data: dict[str, Any]) -> DatasetRecord:
        names = [f.name for f in fields(cls)]
        if list(data) != names:
            missing = [n for n in names if n not in data]
            extra = [k for k in data if k not in names]
            raise ValueError(f"unexpected record keys (missing={missing}, extra={extra})")
        kwargs = dict(data)
        kwargs["downloads"] = [Download(**d) for d in data["downloads"]]
        kwargs["licenses"] = [LicenseInfo(**d) for d in data["licenses"]]
        kwargs["dates"] = Dates(**{k: _date(v) for k, v in data["dates"].items()})
        kwargs["last_updated"] = _date(data["last_updated"])
        kwargs["topics"] = [TopicScore(**t) for t in data["topics"]]
        return cls(**kwargs)

    @property
    def sort_key(self) -> tuple[str, str, int]:
        return (self.domain, self.page_url, self.entity_index)


def _encode(value: Any) -> Any:
    if isinstance(value, dt.date):
        return value.isoformat()
    if isinstance(value, list):
        return [_encode(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return {f.name: _encode(getattr(value, f.name)) for f in fields(value)}
    return value


def _date(value: str | None) -> dt.date | None:
    return None if value is None else dt.date.fromisoformat(value)
