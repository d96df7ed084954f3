"""Weighted-lexicon topic assignment."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from dsmeta.model import DatasetRecord, TopicScore

DEFAULT_FIELD_WEIGHTS = {"title": 3.0, "description": 2.0, "keywords": 2.0, "page_text": 1.0}


@dataclass
class TopicLexicon:
    # topic -> {phrase: weight}
    topics: dict[str, dict[str, float]]
    threshold: float = 0.05
    field_weights: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_FIELD_WEIGHTS))

    def __post_init__(self) -> None:
        self._phrase_topics: dict[str, list[tuple[str, float]]] = {}
        for topic, phrases in self.topics.items():
            for phrase, weight in phrases.items():
                if weight <= 0:
                    raise ValueError(f"weight for {topic}/{phrase} must be positive")
                if phrase != phrase.lower():
                    raise ValueError(f"phrase {phrase!r} must be lower-case")
                self._phrase_topics.setdefault(phrase, []).append((topic, weight))
        # longest phrases first so "census tract" wins over "census"
        alternatives = sorted(self._phrase_topics, key=lambda p: (-len(p), p))
        self._pattern = (
            re.compile(r"(?<!\w)(" + "|".join(re.escape(p) for p in alternatives) + r")(?!\w)")
            if alternatives
            else None
        )

    def matches(self, text: str) -> list[str]:
        if not text or self._pattern is None:
            return []
        return self._pattern.findall(text.casefold())

    def weights_for(self, phrase: str) -> list[tuple[str, float]]:
        return self._phrase_topics.get(phrase, [])


def parse_lexicon(text: str, threshold: float = 0.05, field_weights: dict[str, float] | None = None) -> TopicLexicon:
    topics: dict[str, dict[str, float]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected topic<TAB>phrase<TAB>weight")
        topic, phrase, weight = (p.strip() for p in parts)
        try:
            value = float(weight)
        except ValueError:
            raise ValueError(f"line {lineno}: weight {weight!r} is not a number") from None
        topics.setdefault(topic, {})[phrase] = value
    return TopicLexicon(topics, threshold, dict(field_weights or DEFAULT_FIELD_WEIGHTS))


def raw_topic_scores(fields: dict[str, str], lexicon: TopicLexicon) -> dict[str, float]:
    """Un-normalized score per topic: field weight x phrase weight, summed over occurrences."""
    scores: dict[str, float] = {}
    for name, text in fields.items():
        fw = lexicon.field_weights.get(name, 0.0)
        if fw <= 0:
            continue
        for phrase in lexicon.matches(text):
            for topic, weight in lexicon.weights_for(phrase):
                scores[topic] = scores.get(topic, 0.0) + fw * weight
    return scores


def assign_topics(record: DatasetRecord, page_text: str | None, lexicon: TopicLexicon) -> list[TopicScore]:
    """Topics whose share of the total matched weight reaches the threshold, best first."""
    fields = {
        "title": record.title,
        "description": record.description,
        "keywords": " ; ".join(record.keywords),
        "page_text": page_text or "",
    }
    scores = raw_topic_scores(fields, lexicon)
    total = sum(scores.values())
    if total <= 0:
        return []
    ranked = sorted(((t, s / total) for t, s in scores.items()), key=lambda ts: (-ts[1], ts[0]))
    return [TopicScore(t, round(s, 6)) for t, s in ranked if s >= lexicon.threshold]
