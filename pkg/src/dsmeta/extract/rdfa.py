"""RDFa Lite (vocab, prefix, typeof, property, resource) to triples."""

from __future__ import annotations

from urllib.parse import urljoin

from dsmeta.extract.graph import Literal, Triple, TripleGraph
from dsmeta.extract.html import Element
from dsmeta.extract.jsonld import valid_language
from dsmeta.vocab import (
    DCAT,
    DCTERMS,
    DC11,
    FOAF,
    OWL,
    RDF,
    RDF_TYPE,
    RDFS,
    SCHEMA,
    XSD,
    is_absolute_iri,
)

ORIGIN = "rdfa"

# subset of the RDFa 1.1 initial context
INITIAL_PREFIXES = {
    "schema": SCHEMA,
    "dcat": DCAT,
    "dct": DCTERMS,
    "dcterms": DCTERMS,
    "dc": DC11,
    "foaf": FOAF,
    "owl": OWL,
    "rdf": RDF,
    "rdfs": RDFS,
    "xsd": XSD,
    "og": "http://ogp.me/ns#",
}


def _parse_prefix_attr(value: str) -> dict[str, str]:
    tokens = value.split()
    out = {}
    for name, iri in zip(tokens[::2], tokens[1::2]):
        if name.endswith(":"):
            out[name[:-1].lower()] = iri
    return out


class RdfaExtractor:
    def __init__(self, graph: TripleGraph, base: str):
        self.graph = graph
        self.base = base

    def _emit(self, s: str, p: str, o: str | Literal) -> None:
        self.graph.triples.append(Triple(s, p, o, ORIGIN))

    def _term(self, term: str, vocab: str | None, prefixes: dict[str, str]) -> str | None:
        prefix, sep, local = term.partition(":")
        if sep:
            if prefix.lower() in prefixes and not local.startswith("//"):
                return prefixes[prefix.lower()] + local
            if is_absolute_iri(term):
                return term
            return None
        if vocab:
            return vocab + term
        return None

    def _iri(self, value: str, prefixes: dict[str, str]) -> str:
        value = value.strip()
        if value.startswith("[") and value.endswith("]"):
            value = value[1:-1]
        prefix, sep, local = value.partition(":")
        if sep and prefix == "_":
            return value
        if sep and prefix.lower() in prefixes and not local.startswith("//"):
            return prefixes[prefix.lower()] + local
        return urljoin(self.base, value)

    def run(self, root: Element) -> None:
        self._bnodes: dict[str, str] = {}
        self._walk(root, self.base, None, dict(INITIAL_PREFIXES))

    def _resource(self, value: str, prefixes: dict[str, str]) -> str:
        iri = self._iri(value, prefixes)
        if iri.startswith("_:"):
            if iri not in self._bnodes:
                self._bnodes[iri] = self.graph.new_bnode()
            return self._bnodes[iri]
        return iri

    def _walk(self, el: Element, subject: str, vocab: str | None, prefixes: dict[str, str]) -> None:
        attrs = el.attrs
        if "vocab" in attrs:
            vocab = attrs["vocab"].strip() or None
        if "prefix" in attrs:
            prefixes = {**prefixes, **_parse_prefix_attr(attrs["prefix"])}

        child_subject = subject
        properties = [
            p for p in (self._term(t, vocab, prefixes) for t in attrs.get("property", "").split()) if p
        ]
        if "typeof" in attrs:
            if "resource" in attrs:
                typed = self._resource(attrs["resource"], prefixes)
            elif not properties and ("href" in attrs or "src" in attrs):
                typed = self._resource(attrs.get("href") or attrs.get("src") or "", prefixes)
            else:
                typed = self.graph.new_bnode()
            for t in attrs["typeof"].split():
                iri = self._term(t, vocab, prefixes)
                if iri:
                    self._emit(typed, RDF_TYPE, iri)
            for p in properties:
                self._emit(subject, p, typed)
            child_subject = typed
        elif properties:
            value: str | Literal
            lang = valid_language(el.language())
            if "content" in attrs:
                value = Literal(attrs["content"], lang)
            elif "resource" in attrs:
                value = self._resource(attrs["resource"], prefixes)
            elif "href" in attrs or "src" in attrs:
                value = self._resource(attrs.get("href") or attrs.get("src") or "", prefixes)
            elif "datetime" in attrs:
                value = Literal(attrs["datetime"])
            else:
                value = Literal(" ".join(el.text_content().split()), lang)
            for p in properties:
                self._emit(subject, p, value)
        elif "resource" in attrs:
            child_subject = self._resource(attrs["resource"], prefixes)

        for child in el.element_children():
            self._walk(child, child_subject, vocab, prefixes)


def extract_rdfa(root: Element, graph: TripleGraph, base: str) -> None:
    RdfaExtractor(graph, base).run(root)
