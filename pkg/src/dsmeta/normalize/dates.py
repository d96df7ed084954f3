"""Date parsing and last-updated resolution."""

from __future__ import annotations

import datetime as dt
import re

MONTHS = {
    name: i
    for i, names in enumerate(
        [
            ("january", "jan"),
            ("february", "feb"),
            ("march", "mar"),
            ("april", "apr"),
            ("may",),
            ("june", "jun"),
            ("july", "jul"),
            ("august", "aug"),
            ("september", "sep", "sept"),
            ("october", "oct"),
            ("november", "nov"),
            ("december", "dec"),
        ],
        start=1,
    )
    for name in names
}
_MONTH = r"(?P<month_name>[a-z]+)\.?"

_ISO_DATETIME = re.compile(
    r"^(?P<y>\d{4})-(?P<m>\d{2})-(?P<d>\d{2})(?:[T ]\d{2}:\d{2}(?::\d{2}(?:[.,]\d+)?)?(?:Z|[+-]\d{2}(?::?\d{2})?)?)?$"
)
_ISO_BASIC = re.compile(r"^(?P<y>\d{4})(?P<m>\d{2})(?P<d>\d{2})$")
_YEAR_MONTH = re.compile(r"^(?P<y>\d{4})[-/](?P<m>\d{1,2})$")
_YEAR = re.compile(r"^(?P<y>\d{4})$")
_YMD_SLASH = re.compile(r"^(?P<y>\d{4})/(?P<m>\d{1,2})/(?P<d>\d{1,2})$")
_SLASHED = re.compile(r"^(?P<a>\d{1,2})[/-](?P<b>\d{1,2})[/-](?P<y>\d{4})$")
_DOTTED = re.compile(r"^(?P<d>\d{1,2})\.(?P<m>\d{1,2})\.(?P<y>\d{4})$")
_MONTH_DAY_YEAR = re.compile(rf"^{_MONTH}\s+(?P<d>\d{{1,2}})(?:st|nd|rd|th)?,?\s+(?P<y>\d{{4}})$")
_DAY_MONTH_YEAR = re.compile(rf"^(?P<d>\d{{1,2}})(?:st|nd|rd|th)?[\s-]+{_MONTH}[\s,-]+(?P<y>\d{{4}})$")
_MONTH_YEAR = re.compile(rf"^{_MONTH}[\s,]+(?P<y>\d{{4}})$")


def _make(y: str, m: str | int, d: str | int = 1) -> dt.date | None:
    try:
        return dt.date(int(y), int(m), int(d))
    except ValueError:
        return None


def parse_date(raw: str, order: str = "mdy") -> dt.date | None:
    """Parse common date spellings; ``order`` resolves ambiguous slashed dates ("mdy" or "dmy")."""
    text = " ".join(str(raw).split()).strip()
    if not text:
        return None
    for pattern in (_ISO_DATETIME, _ISO_BASIC, _YMD_SLASH):
        m = pattern.match(text)
        if m:
            return _make(m["y"], m["m"], m["d"])
    m = _YEAR_MONTH.match(text)
    if m:
        return _make(m["y"], m["m"])
    m = _YEAR.match(text)
    if m:
        return _make(m["y"], 1)
    m = _SLASHED.match(text)
    if m:
        a, b = int(m["a"]), int(m["b"])
        month, day = (a, b) if order == "mdy" else (b, a)
        if month > 12 and day <= 12:
            month, day = day, month
        return _make(m["y"], month, day)
    m = _DOTTED.match(text)
    if m:
        return _make(m["y"], m["m"], m["d"])
    lowered = text.lower()
    for pattern in (_MONTH_DAY_YEAR, _DAY_MONTH_YEAR, _MONTH_YEAR):
        m = pattern.match(lowered)
        if m and m["month_name"] in MONTHS:
            day = m.groupdict().get("d") or 1
            return _make(m["y"], MONTHS[m["month_name"]], day)
    return None


def resolve_last_updated(
    created: dt.date | None = None,
    published: dt.date | None = None,
    modified: dt.date | None = None,
    page_modified: dt.date | None = None,
) -> dt.date | None:
    """Latest metadata date; the page's own modification date only when metadata has none."""
    metadata = [d for d in (created, published, modified) if d is not None]
    if metadata:
        return max(metadata)
    return page_modified
