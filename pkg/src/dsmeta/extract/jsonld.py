"""JSON-LD to triples, restricted to the contexts seen on dataset pages.

Remote contexts are never fetched.  The schema.org and DCAT contexts are
known by IRI and replaced by built-in equivalents; anything else remote is
reported and ignored, so its terms stay unresolved and are dropped.  Inline
term maps, prefixes, ``@vocab``, ``@base``, ``@language``, type coercion,
keyword aliases, ``@reverse``, ``@graph``, ``@list`` and ``@set`` are
supported.  Lists are flattened into repeated values in list order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from urllib.parse import urljoin

from dsmeta.extract.graph import Diagnostic, Literal, Triple, TripleGraph
from dsmeta.vocab import (
    DCAT,
    DCTERMS,
    FOAF,
    OWL,
    RDF,
    RDF_TYPE,
    RDFS,
    SCHEMA,
    VCARD,
    XSD,
    is_absolute_iri,
)

ORIGIN = "jsonld"

KEYWORDS = frozenset(
    "@context @id @type @value @language @graph @list @set @reverse @index "
    "@base @vocab @container @nest @included @direction @json @none".split()
)

_SCHEMA_CONTEXT_RE = re.compile(
    r"^https?://(www\.)?schema\.org(/|/docs/jsonldcontext\.json(ld)?)?$", re.I
)
_DCAT_CONTEXT_RE = re.compile(r"^https?://www\.w3\.org/ns/dcat(\.jsonld|\.json|#|/)?$", re.I)

_DCAT_TERMS = {
    "dcat": DCAT,
    "dct": DCTERMS,
    "dcterms": DCTERMS,
    "foaf": FOAF,
    "vcard": VCARD,
    "rdf": RDF,
    "rdfs": RDFS,
    "owl": OWL,
    "xsd": XSD,
    "schema": SCHEMA,
    "Dataset": DCAT + "Dataset",
    "Distribution": DCAT + "Distribution",
    "Catalog": DCAT + "Catalog",
    "title": DCTERMS + "title",
    "description": DCTERMS + "description",
    "publisher": DCTERMS + "publisher",
    "keyword": DCAT + "keyword",
    "theme": DCAT + "theme",
    "distribution": DCAT + "distribution",
    "landingPage": DCAT + "landingPage",
    "accessURL": DCAT + "accessURL",
    "downloadURL": DCAT + "downloadURL",
    "mediaType": DCAT + "mediaType",
    "format": DCTERMS + "format",
    "license": DCTERMS + "license",
    "issued": DCTERMS + "issued",
    "modified": DCTERMS + "modified",
    "identifier": DCTERMS + "identifier",
    "spatial": DCTERMS + "spatial",
    "temporal": DCTERMS + "temporal",
}

_LANG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")


def valid_language(tag: object) -> str | None:
    if isinstance(tag, str) and _LANG_RE.match(tag.strip()):
        return tag.strip()
    return None


@dataclass
class TermDef:
    iri: str
    coerce: str | None = None  # "@id", "@vocab" or a datatype IRI
    language: str | None = None
    has_language: bool = False
    reverse: bool = False


@dataclass
class Context:
    base: str
    vocab: str | None = None
    language: str | None = None
    terms: dict[str, TermDef] = field(default_factory=dict)

    def copy(self) -> Context:
        return Context(self.base, self.vocab, self.language, dict(self.terms))


class RemoteContextSkipped(Exception):
    pass


def _builtin_context(iri: str) -> dict | None:
    if _SCHEMA_CONTEXT_RE.match(iri):
        return {"@vocab": SCHEMA, "schema": SCHEMA}
    if _DCAT_CONTEXT_RE.match(iri):
        return dict(_DCAT_TERMS)
    return None


class JsonLdProcessor:
    def __init__(self, graph: TripleGraph, base: str):
        self.graph = graph
        self.base = base
        self.bnode_labels: dict[str, str] = {}
        self._seen: set[tuple] = set()

    # -- context handling -------------------------------------------------

    def process_context(self, active: Context, local: object) -> Context:
        result = active.copy()
        items = local if isinstance(local, list) else [local]
        for item in items:
            if item is None:
                result = Context(self.base)
                continue
            if isinstance(item, str):
                resolved = urljoin(result.base, item)
                builtin = _builtin_context(resolved)
                if builtin is None:
                    self.graph.diagnostics.append(
                        Diagnostic("remote-context-skipped", f"remote context not fetched: {resolved}", ORIGIN)
                    )
                    continue
                item = builtin
            if not isinstance(item, dict):
                self.graph.diagnostics.append(
                    Diagnostic("invalid-context", f"unsupported context entry {item!r}", ORIGIN)
                )
                continue
            if "@base" in item:
                b = item["@base"]
                result.base = urljoin(result.base, b) if isinstance(b, str) else self.base
            if "@vocab" in item:
                v = item["@vocab"]
                result.vocab = self._expand_iri(result, v, vocab=True) if isinstance(v, str) else None
            if "@language" in item:
                result.language = valid_language(item["@language"])
            definitions = [(k, v) for k, v in item.items() if not k.startswith("@")]
            # second pass sees prefixes defined later in the same map
            for _ in range(2):
                for term, definition in definitions:
                    td = self._define_term(result, term, definition)
                    if td is None:
                        result.terms.pop(term, None)
                    else:
                        result.terms[term] = td
        return result

    def _define_term(self, ctx: Context, term: str, definition: object) -> TermDef | None:
        if definition is None:
            return None
        if isinstance(definition, str):
            return TermDef(self._expand_iri(ctx, definition, vocab=True, local_term=term))
        if not isinstance(definition, dict):
            return None
        reverse = "@reverse" in definition
        raw_id = definition.get("@reverse") if reverse else definition.get("@id", term)
        if not isinstance(raw_id, str):
            return None
        iri = self._expand_iri(ctx, raw_id, vocab=True, local_term=term)
        coerce = definition.get("@type")
        if isinstance(coerce, str) and coerce not in ("@id", "@vocab"):
            coerce = self._expand_iri(ctx, coerce, vocab=True)
        td = TermDef(iri, coerce if isinstance(coerce, str) else None, reverse=reverse)
        if "@language" in definition:
            td.has_language = True
            td.language = valid_language(definition["@language"])
        return td

    def _expand_iri(
        self, ctx: Context, value: str, vocab: bool = False, local_term: str | None = None
    ) -> str:
        if value in KEYWORDS:
            return value
        if vocab and value in ctx.terms and value != local_term:
            return ctx.terms[value].iri
        prefix, sep, suffix = value.partition(":")
        if sep:
            if prefix == "_":
                return value
            if not suffix.startswith("//") and prefix in ctx.terms and prefix != local_term:
                return ctx.terms[prefix].iri + suffix
            if is_absolute_iri(value):
                return value
        if vocab and ctx.vocab:
            return ctx.vocab + value
        if vocab:
            return value
        return urljoin(ctx.base, value)

    # -- node processing --------------------------------------------------

    def _keyword(self, ctx: Context, key: str) -> str:
        if key in KEYWORDS:
            return key
        td = ctx.terms.get(key)
        if td is not None and td.iri in KEYWORDS:
            return td.iri
        return key

    def _node_id(self, ctx: Context, raw: object) -> str:
        if isinstance(raw, str) and raw:
            if raw.startswith("_:"):
                if raw not in self.bnode_labels:
                    self.bnode_labels[raw] = self.graph.new_bnode()
                return self.bnode_labels[raw]
            return self._expand_iri(ctx, raw)
        return self.graph.new_bnode()

    def _emit(self, s: str, p: str, o: str | Literal) -> None:
        key = (s, p, o)
        if key in self._seen:
            return
        self._seen.add(key)
        self.graph.triples.append(Triple(s, p, o, ORIGIN))

    def process_document(self, data: object) -> None:
        ctx = Context(self.base)
        self._process_top(ctx, data)

    def _process_top(self, ctx: Context, data: object) -> None:
        if isinstance(data, list):
            for item in data:
                self._process_top(ctx, item)
        elif isinstance(data, dict):
            if "@context" in data:
                ctx = self.process_context(ctx, data["@context"])
            keys = {self._keyword(ctx, k) for k in data}
            graph_key = next((k for k in data if self._keyword(ctx, k) == "@graph"), None)
            if graph_key is not None and keys <= {"@context", "@graph", "@id"}:
                self._process_top(ctx, data[graph_key])
            else:
                self.process_node(ctx, data)

    def process_node(self, ctx: Context, node: dict) -> str:
        if "@context" in node:
            ctx = self.process_context(ctx, node["@context"])
        id_key = next((k for k in node if self._keyword(ctx, k) == "@id"), None)
        subject = self._node_id(ctx, node[id_key] if id_key else None)

        for key, value in node.items():
            kw = self._keyword(ctx, key)
            if kw in ("@context", "@id", "@index"):
                continue
            if kw == "@type":
                for t in value if isinstance(value, list) else [value]:
                    if isinstance(t, str):
                        iri = self._expand_iri(ctx, t, vocab=True)
                        if is_absolute_iri(iri):
                            self._emit(subject, RDF_TYPE, iri)
                continue
            if kw in ("@graph", "@included"):
                for item in value if isinstance(value, list) else [value]:
                    if isinstance(item, dict):
                        self.process_node(ctx, item)
                continue
            if kw == "@reverse":
                if isinstance(value, dict):
                    for rkey, rval in value.items():
                        pred = self._expand_iri(ctx, rkey, vocab=True)
                        if is_absolute_iri(pred):
                            for obj in self._values(ctx, rval, None):
                                if isinstance(obj, str):
                                    self._emit(obj, pred, subject)
                continue
            if kw in KEYWORDS:
                continue
            td = ctx.terms.get(key)
            pred = self._expand_iri(ctx, key, vocab=True)
            if not is_absolute_iri(pred) or pred.startswith("_:"):
                continue
            for obj in self._values(ctx, value, td):
                if td is not None and td.reverse:
                    if isinstance(obj, str):
                        self._emit(obj, pred, subject)
                else:
                    self._emit(subject, pred, obj)
        return subject

    def _values(self, ctx: Context, value: object, td: TermDef | None) -> list[str | Literal]:
        out: list[str | Literal] = []
        stack = [value]
        items: list[object] = []
        # flatten arrays, @list and @set in order
        while stack:
            v = stack.pop(0)
            if isinstance(v, list):
                stack[:0] = v
            elif isinstance(v, dict) and any(self._keyword(ctx, k) in ("@list", "@set") for k in v):
                inner = next(v[k] for k in v if self._keyword(ctx, k) in ("@list", "@set"))
                stack.insert(0, inner if isinstance(inner, list) else [inner])
            else:
                items.append(v)
        for v in items:
            obj = self._value(ctx, v, td)
            if obj is not None:
                out.append(obj)
        return out

    def _value(self, ctx: Context, v: object, td: TermDef | None) -> str | Literal | None:
        coerce = td.coerce if td else None
        if v is None:
            return None
        if isinstance(v, bool):
            return Literal("true" if v else "false", None, XSD + "boolean")
        if isinstance(v, int):
            return Literal(str(v), None, XSD + "integer")
        if isinstance(v, float):
            return Literal(repr(v), None, XSD + "double")
        if isinstance(v, str):
            if coerce == "@id":
                return self._node_id(ctx, v) if v.startswith("_:") else self._expand_iri(ctx, v)
            if coerce == "@vocab":
                return self._expand_iri(ctx, v, vocab=True)
            if coerce:
                return Literal(v, None, coerce)
            lang = td.language if td is not None and td.has_language else ctx.language
            return Literal(v, lang, None)
        if isinstance(v, dict):
            value_key = next((k for k in v if self._keyword(ctx, k) == "@value"), None)
            if value_key is not None:
                raw = v[value_key]
                if raw is None:
                    return None
                lang_key = next((k for k in v if self._keyword(ctx, k) == "@language"), None)
                type_key = next((k for k in v if self._keyword(ctx, k) == "@type"), None)
                dtype = None
                if type_key is not None and isinstance(v[type_key], str):
                    dtype = self._expand_iri(ctx, v[type_key], vocab=True)
                if isinstance(raw, bool):
                    text = "true" if raw else "false"
                else:
                    text = str(raw)
                lang = valid_language(v[lang_key]) if lang_key else None
                return Literal(text, lang, dtype)
            keys = {self._keyword(ctx, k) for k in v}
            if keys == {"@id"}:
                raw_id = next(v[k] for k in v if self._keyword(ctx, k) == "@id")
                return self._node_id(ctx, raw_id)
            return self.process_node(ctx, v)
        return None


def extract_jsonld(scripts: list[str], graph: TripleGraph, base: str) -> None:
    """Append triples from each JSON-LD script body to ``graph``; bad blocks are skipped."""
    for index, text in enumerate(scripts):
        text = text.strip()
        if not text:
            continue
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            graph.diagnostics.append(
                Diagnostic("malformed-jsonld", f"block {index}: {exc.msg} at line {exc.lineno}", ORIGIN, f"script[{index}]")
            )
            continue
        proc = JsonLdProcessor(graph, base)
        try:
            proc.process_document(data)
        except RecursionError:
            graph.diagnostics.append(
                Diagnostic("malformed-jsonld", f"block {index}: nesting too deep", ORIGIN, f"script[{index}]")
            )
