"""Microdata to triples, following the W3C Microdata-to-RDF mapping."""

from __future__ import annotations

import re
from urllib.parse import urljoin

from dsmeta.extract.graph import Literal, Triple, TripleGraph
from dsmeta.extract.html import Element
from dsmeta.extract.jsonld import valid_language
from dsmeta.vocab import RDF_TYPE, XSD, is_absolute_iri

ORIGIN = "microdata"

_URL_ATTRS = {
    "a": "href",
    "area": "href",
    "link": "href",
    "audio": "src",
    "embed": "src",
    "iframe": "src",
    "img": "src",
    "source": "src",
    "track": "src",
    "video": "src",
    "object": "data",
}

_TIME_TYPES = [
    (re.compile(r"^\d{4}-\d{2}-\d{2}$"), XSD + "date"),
    (re.compile(r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}(:\d{2}(\.\d+)?)?(Z|[+-]\d{2}:?\d{2})?$"), XSD + "dateTime"),
    (re.compile(r"^\d{2}:\d{2}(:\d{2}(\.\d+)?)?$"), XSD + "time"),
    (re.compile(r"^\d{4}-\d{2}$"), XSD + "gYearMonth"),
    (re.compile(r"^\d{4}$"), XSD + "gYear"),
    (re.compile(r"^P"), XSD + "duration"),
]


def _vocabulary(item_type: str) -> str:
    if "#" in item_type:
        return item_type.rsplit("#", 1)[0] + "#"
    return item_type.rsplit("/", 1)[0] + "/"


class MicrodataExtractor:
    def __init__(self, root: Element, graph: TripleGraph, base: str):
        self.root = root
        self.graph = graph
        self.base = base
        self.memory: dict[int, str] = {}
        self.ids: dict[str, Element] = {}
        self.order: dict[int, int] = {}
        for i, el in enumerate(root.iter()):
            self.order[id(el)] = i
            el_id = el.get("id")
            if el_id and el_id not in self.ids:
                self.ids[el_id] = el

    def run(self) -> None:
        for el in self.root.iter():
            if "itemscope" in el.attrs and "itemprop" not in el.attrs:
                self.generate_item(el, None)

    def _emit(self, s: str, p: str, o: str | Literal) -> None:
        self.graph.triples.append(Triple(s, p, o, ORIGIN))

    def generate_item(self, item: Element, parent_vocab: str | None) -> str:
        key = id(item)
        if key in self.memory:
            return self.memory[key]
        itemid = item.get("itemid")
        subject = urljoin(self.base, itemid.strip()) if itemid and itemid.strip() else self.graph.new_bnode()
        self.memory[key] = subject

        types = [t for t in (item.get("itemtype") or "").split() if is_absolute_iri(t)]
        for t in types:
            self._emit(subject, RDF_TYPE, t)
        vocab = _vocabulary(types[0]) if types else parent_vocab

        for prop_el in self._properties(item):
            value = self._property_value(prop_el, vocab)
            if value is None:
                continue
            for name in (prop_el.get("itemprop") or "").split():
                if is_absolute_iri(name):
                    predicate = name
                elif vocab:
                    predicate = vocab + name
                else:
                    continue
                self._emit(subject, predicate, value)
        return subject

    def _properties(self, item: Element) -> list[Element]:
        """Elements carrying properties of ``item``, in document order, without duplicates."""
        found: list[Element] = []
        seen: set[int] = {id(item)}
        pending: list[Element] = list(item.element_children())
        for ref in (item.get("itemref") or "").split():
            target = self.ids.get(ref)
            if target is not None:
                pending.append(target)
        while pending:
            el = pending.pop(0)
            if id(el) in seen:
                continue
            seen.add(id(el))
            if "itemprop" in el.attrs:
                found.append(el)
            if "itemscope" not in el.attrs:
                pending[:0] = el.element_children()
        found.sort(key=lambda el: self.order.get(id(el), 0))
        return found

    def _property_value(self, el: Element, vocab: str | None) -> str | Literal | None:
        if "itemscope" in el.attrs:
            return self.generate_item(el, vocab)
        lang = valid_language(el.language())
        tag = el.tag
        if tag == "meta":
            content = el.get("content")
            return None if content is None else Literal(content, lang)
        if tag in _URL_ATTRS:
            url = el.get(_URL_ATTRS[tag])
            if url is None:
                return Literal(el.text_content().strip(), lang) if tag == "a" else None
            return urljoin(self.base, url.strip())
        if tag in ("data", "meter"):
            value = el.get("value")
            if value is not None:
                return Literal(value)
        if tag == "time":
            value = el.get("datetime")
            if value is None:
                value = el.text_content().strip()
            for pattern, dtype in _TIME_TYPES:
                if pattern.match(value):
                    return Literal(value, None, dtype)
            return Literal(value, lang)
        return Literal(" ".join(el.text_content().split()), lang)


def extract_microdata(root: Element, graph: TripleGraph, base: str) -> None:
    MicrodataExtractor(root, graph, base).run()
