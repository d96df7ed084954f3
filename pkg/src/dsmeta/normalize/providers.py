"""Provider name resolution."""

from __future__ import annotations

import logging
import re
import unicodedata

from dsmeta.model import RawEntity, RawValue
from dsmeta.vocab import DCTERMS, FOAF, RDFS, SCHEMA, VCARD

log = logging.getLogger(__name__)

NAME_PREDICATES = (
    SCHEMA + "name",
    SCHEMA + "legalName",
    FOAF + "name",
    VCARD + "fn",
    DCTERMS + "title",
    RDFS + "label",
)
_LEGAL_SUFFIX_RE = re.compile(r"(?:[\s,]+(?:inc\.?|ltd\.?|gmbh|llc\.?))+$")


def entity_name(value: RawValue) -> str | None:
    if isinstance(value, str):
        return value
    names = [n for n in value.texts(*NAME_PREDICATES) if n.strip()]
    return names[0] if names else None


def canonical_provider(name: str) -> str:
    text = unicodedata.normalize("NFKC", name).casefold()
    text = " ".join(text.split())
    text = _LEGAL_SUFFIX_RE.sub("", text)
    return text.strip(" ,")


def resolve_provider(values: list[RawValue]) -> list[str]:
    out: list[str] = []
    for value in values:
        name = entity_name(value)
        if name is None:
            log.debug("provider entity %s has no name; skipped", getattr(value, "node", value))
            continue
        canon = canonical_provider(name)
        if canon and canon not in out:
            out.append(canon)
    return out
