"""Triple graph data model and dataset-entity selection."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from dsmeta.vocab import DATASET_CLASSES, RDF_TYPE, canonical_iri

ORIGINS = ("jsonld", "microdata", "rdfa")


@dataclass(frozen=True)
class Literal:
    text: str
    language: str | None = None
    datatype: str | None = None


# a node-id is an IRI or a blank node label of the form "_:b<n>"
Node = str
Object = Union[Node, Literal]


@dataclass(frozen=True)
class Triple:
    subject: Node
    predicate: str
    object: Object
    origin: str

    def __post_init__(self) -> None:
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown origin {self.origin!r}")


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    origin: str | None = None
    location: str | None = None


@dataclass
class TripleGraph:
    page_url: str
    triples: list[Triple] = field(default_factory=list)
    bnode_counter: int = 0
    diagnostics: list[Diagnostic] = field(default_factory=list)
    # page-level signals captured while parsing
    base_url: str | None = None
    html_lang: str | None = None
    content_language: str | None = None
    page_modified: str | None = None
    page_text: str = ""

    def new_bnode(self) -> str:
        label = f"_:b{self.bnode_counter}"
        self.bnode_counter += 1
        return label

    def literal_languages(self) -> list[str]:
        return [
            t.object.language
            for t in self.triples
            if isinstance(t.object, Literal) and t.object.language
        ]


@dataclass
class EntitySubgraph:
    root: Node
    triples: list[Triple]

    def outgoing(self, node: Node) -> list[Triple]:
        return [t for t in self.triples if t.subject == node]


def is_bnode(node: object) -> bool:
    return isinstance(node, str) and node.startswith("_:")


def _is_dataset_type(obj: Object) -> bool:
    return isinstance(obj, str) and canonical_iri(obj) in DATASET_CLASSES


def select_dataset_entities(graph: TripleGraph) -> list[EntitySubgraph]:
    """One subgraph per Dataset-typed node, in document order, with its reachable closure."""
    roots: list[Node] = []
    seen: set[Node] = set()
    by_subject: dict[Node, list[int]] = {}
    for i, t in enumerate(graph.triples):
        by_subject.setdefault(t.subject, []).append(i)
        if t.predicate == RDF_TYPE and _is_dataset_type(t.object) and t.subject not in seen:
            seen.add(t.subject)
            roots.append(t.subject)

    entities = []
    for root in roots:
        reached = {root}
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for i in by_subject.get(node, ()):
                obj = graph.triples[i].object
                if isinstance(obj, str) and obj not in reached and obj in by_subject:
                    reached.add(obj)
                    queue.append(obj)
        indices = sorted(i for node in reached for i in by_subject[node])
        entities.append(EntitySubgraph(root, [graph.triples[i] for i in indices]))
    return entities
