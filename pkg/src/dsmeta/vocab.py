"""Namespace IRIs and helpers shared by the extractor and the record mapper."""

from __future__ import annotations

SCHEMA = "http://schema.org/"
SCHEMA_HTTPS = "https://schema.org/"
DCAT = "http://www.w3.org/ns/dcat#"
DCTERMS = "http://purl.org/dc/terms/"
DC11 = "http://purl.org/dc/elements/1.1/"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
FOAF = "http://xmlns.com/foaf/0.1/"
VCARD = "http://www.w3.org/2006/vcard/ns#"

RDF_TYPE = RDF + "type"

DATASET_CLASSES = frozenset({SCHEMA + "Dataset", DCAT + "Dataset"})

# short prefixes accepted in config files and CURIEs
PREFIXES = {
    "so": SCHEMA,
    "schema": SCHEMA,
    "dcat": DCAT,
    "dct": DCAT,
    "dcterms": DCTERMS,
    "purl": DCTERMS,
    "dc": DC11,
    "rdf": RDF,
    "rdfs": RDFS,
    "owl": OWL,
    "xsd": XSD,
    "foaf": FOAF,
    "vcard": VCARD,
}

_SCHEMA_VARIANTS = (
    "https://schema.org/",
    "http://www.schema.org/",
    "https://www.schema.org/",
)


def canonical_iri(iri: str) -> str:
    """Fold the http/https/www variants of the schema.org namespace onto one form."""
    for variant in _SCHEMA_VARIANTS:
        if iri.startswith(variant):
            return SCHEMA + iri[len(variant):]
    return iri


def expand_curie(term: str) -> str:
    """Expand ``so:name`` style CURIEs using :data:`PREFIXES`; absolute IRIs pass through."""
    term = term.strip()
    if "://" in term:
        return canonical_iri(term)
    prefix, sep, local = term.partition(":")
    if sep and prefix in PREFIXES:
        return PREFIXES[prefix] + local
    raise ValueError(f"cannot expand {term!r}: unknown prefix")


def local_name(iri: str) -> str:
    for sep in ("#", "/"):
        if sep in iri:
            iri = iri.rsplit(sep, 1)[1] or iri
    return iri


def is_absolute_iri(value: str) -> bool:
    scheme, sep, rest = value.partition(":")
    return bool(sep) and bool(rest) and scheme[:1].isalpha() and all(
        c.isalnum() or c in "+-." for c in scheme
    )
