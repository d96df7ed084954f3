"""Page language from declared signals."""

from __future__ import annotations

from collections import Counter
from typing import Iterable

UNKNOWN = "unknown"


def primary_subtag(tag: str | None) -> str | None:
    if not tag:
        return None
    # Content-Language may list several; take the first
    first = tag.split(",")[0].strip().replace("_", "-")
    sub = first.split("-")[0].lower()
    return sub if sub.isalpha() and 1 < len(sub) <= 8 else None


def detect_language(
    html_lang: str | None = None,
    content_language: str | None = None,
    literal_languages: Iterable[str] = (),
) -> str:
    for declared in (html_lang, content_language):
        sub = primary_subtag(declared)
        if sub:
            return sub
    votes = Counter(s for s in (primary_subtag(t) for t in literal_languages) if s)
    if not votes:
        return UNKNOWN
    # ties go to the alphabetically first code
    return min(votes.items(), key=lambda kv: (-kv[1], kv[0]))[0]
