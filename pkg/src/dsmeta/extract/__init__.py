"""Embedded structured data (JSON-LD, Microdata, RDFa Lite) to a common triple graph."""

from __future__ import annotations

from urllib.parse import urljoin

from dsmeta.extract.graph import (
    Diagnostic,
    EntitySubgraph,
    Literal,
    Triple,
    TripleGraph,
    is_bnode,
    select_dataset_entities,
)
from dsmeta.extract.html import Element, parse_html, visible_text
from dsmeta.extract.jsonld import extract_jsonld
from dsmeta.extract.microdata import extract_microdata
from dsmeta.extract.rdfa import extract_rdfa

__all__ = [
    "Diagnostic",
    "EntitySubgraph",
    "Literal",
    "Triple",
    "TripleGraph",
    "extract_structured_data",
    "is_bnode",
    "select_dataset_entities",
]

_JSONLD_TYPES = ("application/ld+json", "application/json+ld")


def _page_signals(root: Element, graph: TripleGraph) -> list[str]:
    scripts: list[str] = []
    for el in root.iter():
        tag = el.tag
        if tag == "script":
            script_type = (el.get("type") or "").split(";")[0].strip().lower()
            if script_type in _JSONLD_TYPES:
                scripts.append(el.text_content())
        elif tag == "base" and graph.base_url is None and el.get("href"):
            graph.base_url = urljoin(graph.page_url, el.get("href").strip())
        elif tag == "html" and graph.html_lang is None:
            lang = el.get("lang") or el.get("xml:lang")
            if lang and lang.strip():
                graph.html_lang = lang.strip()
        elif tag == "meta" and el.get("http-equiv"):
            equiv = el.get("http-equiv").strip().lower()
            content = (el.get("content") or "").strip()
            if equiv == "content-language" and content and graph.content_language is None:
                graph.content_language = content
            elif equiv == "last-modified" and content and graph.page_modified is None:
                graph.page_modified = content
    return scripts


def _dedupe(triples: list[Triple]) -> list[Triple]:
    seen: set[Triple] = set()
    out = []
    for t in triples:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def extract_structured_data(html: str | bytes, page_url: str) -> TripleGraph:
    """Parse every supported syntax on the page into one graph.

    Syntaxes are processed JSON-LD first, then Microdata, then RDFa, so that
    blank-node labels of earlier syntaxes never depend on later ones.
    """
    graph = TripleGraph(page_url=page_url)
    if isinstance(html, bytes):
        try:
            html = html.decode("utf-8")
        except UnicodeDecodeError as exc:
            graph.diagnostics.append(Diagnostic("unparseable-document", f"not UTF-8: {exc.reason} at byte {exc.start}"))
            return graph
    try:
        root = parse_html(html)
    except Exception as exc:  # html.parser is tolerant; this is a last resort
        graph.diagnostics.append(Diagnostic("unparseable-document", f"{type(exc).__name__}: {exc}"))
        return graph

    scripts = _page_signals(root, graph)
    base = graph.base_url or page_url
    graph.page_text = visible_text(root)

    extract_jsonld(scripts, graph, base)
    for origin, extractor in (("microdata", extract_microdata), ("rdfa", extract_rdfa)):
        mark = len(graph.triples)
        try:
            extractor(root, graph, base)
        except RecursionError:
            del graph.triples[mark:]
            graph.diagnostics.append(Diagnostic("nesting-too-deep", "document nesting exceeds limits", origin))
    graph.triples = _dedupe(graph.triples)
    return graph
