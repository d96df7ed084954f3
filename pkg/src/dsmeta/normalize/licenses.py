"""License classification and the openness rule."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class LicenseClass:
    class_id: str
    allows_redistribution: bool
    allows_commercial: bool

    @property
    def recognized(self) -> bool:
        return self.class_id != "unknown"


UNKNOWN = LicenseClass("unknown", False, False)


@dataclass(frozen=True)
class LicenseRule:
    license: LicenseClass
    kind: str  # "url" or "name"
    pattern: re.Pattern[str]


def parse_license_table(text: str) -> list[LicenseRule]:
    rules = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5 or parts[3] not in ("url", "name"):
            raise ValueError(f"line {lineno}: expected class, redistribution, commercial, url|name, pattern")
        class_id, redistribution, commercial, kind, pattern = parts
        flags = []
        for raw in (redistribution, commercial):
            if raw not in ("true", "false"):
                raise ValueError(f"line {lineno}: flag must be true or false, got {raw!r}")
            flags.append(raw == "true")
        if class_id == "unknown":
            raise ValueError(f"line {lineno}: 'unknown' is reserved")
        rules.append(
            LicenseRule(LicenseClass(class_id, flags[0], flags[1]), kind, re.compile(pattern, re.IGNORECASE))
        )
    return rules


def classify_license(raw: str, rules: list[LicenseRule]) -> LicenseClass:
    """URL rules are tried first, then name rules; the first match wins."""
    text = " ".join(raw.split())
    if not text:
        return UNKNOWN
    for kind in ("url", "name"):
        for rule in rules:
            if rule.kind == kind and rule.pattern.search(text):
                return rule.license
    return UNKNOWN


def compute_openness(licenses: Iterable[LicenseClass], is_accessible_for_free: bool | None) -> bool:
    if is_accessible_for_free is True:
        return True
    return any(lic.allows_redistribution for lic in licenses)
