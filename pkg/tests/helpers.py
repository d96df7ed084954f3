"""Record and snapshot builders shared by the tests."""

from __future__ import annotations

import datetime as dt
import random

from dsmeta.dedup import record_id
from dsmeta.model import Dates, DatasetRecord, Download, LicenseInfo, TopicScore
from dsmeta.store import CorpusSnapshot, Manifest

LICENSE_CHOICES = [
    ("https://creativecommons.org/licenses/by/4.0/", "cc-by", True, True),
    ("https://creativecommons.org/licenses/by-nc/4.0/", "cc-by-nc", True, False),
    ("cc0", "cc0", True, True),
    ("all rights reserved", "unknown", False, False),
]
CATEGORIES = ["Tables", "Structured", "Documents", "Geospatial", "Other"]
TOPICS = ["geosciences", "biology", "medicine", "economics"]


def make_record(
    title: str = "t",
    description: str = "d",
    page_url: str = "https://example.com/a",
    domain: str | None = None,
    **fields,
) -> DatasetRecord:
    if domain is None:
        host = page_url.split("/")[2]
        domain = ".".join(host.split(".")[-2:])
    rec = DatasetRecord(
        id="",
        page_url=page_url,
        entity_index=fields.pop("entity_index", 0),
        page_dataset_count=fields.pop("page_dataset_count", 1),
        domain=domain,
        tld=fields.pop("tld", domain.rsplit(".", 1)[-1]),
        is_government=fields.pop("is_government", False),
        language=fields.pop("language", "en"),
        title=title,
        description=description,
        **fields,
    )
    rec.id = record_id(rec)
    return rec


def random_record(rng: random.Random, n: int) -> DatasetRecord:
    domain = f"site{rng.randrange(12)}.{rng.choice(['com', 'org', 'gov'])}"
    page = f"https://www.{domain}/p/{rng.randrange(40)}"
    licenses = [LicenseInfo(*rng.choice(LICENSE_CHOICES)) for _ in range(rng.choice([0, 0, 1, 1, 2]))]
    free = rng.choice([True, False, None, None])
    downloads = [
        Download(f"https://{domain}/f/{n}/{k}", rng.choice(["csv", "owl", "pdf", "shp", "xyz"]), rng.choice(CATEGORIES))
        for k in range(rng.choice([0, 0, 1, 2, 3]))
    ]

    def maybe_date():
        if rng.random() < 0.4:
            return None
        return dt.date(2015, 1, 1) + dt.timedelta(days=rng.randrange(0, 3300))

    dates = Dates(maybe_date(), maybe_date(), maybe_date(), maybe_date())
    meta = [d for d in (dates.created, dates.published, dates.modified) if d]
    last = max(meta) if meta else dates.page_modified
    return make_record(
        title=rng.choice(["", "Title A", "Title B", f"T{n}"]) if rng.random() < 0.1 else f"T{n % 50}",
        description="" if rng.random() < 0.05 else "desc",
        page_url=page,
        domain=domain,
        entity_index=rng.randrange(3),
        page_dataset_count=rng.choice([1, 1, 1, 2, 5, 12]),
        tld=domain.rsplit(".", 1)[1],
        is_government=domain.endswith(".gov"),
        language=rng.choice(["en", "en", "es", "fr", "unknown"]),
        providers=rng.choice([[], ["p1"], ["p2", "p1"], [f"p{rng.randrange(30)}"]]),
        keywords=rng.choice([[], ["a"], ["a", "b"]]),
        url=rng.choice(["", page]),
        temporal_coverage=rng.choice(["", "2001/2002"]),
        spatial_coverage=rng.choice(["", "Earth"]),
        downloads=downloads,
        licenses=licenses,
        is_accessible_for_free=free,
        is_open=free is True or any(lic.allows_redistribution for lic in licenses),
        dois=rng.choice([[], ["10.1234/abc"]]),
        compact_ids=rng.choice([[], [], ["pdb:1abc"]]),
        dates=dates,
        last_updated=last,
        catalog=rng.choice([[], ["c"]]),
        variables=rng.choice([[], ["v"]]),
        authors=rng.choice([[], ["a"]]),
        same_as=rng.choice([[], ["https://x"]]),
        alternate_names=rng.choice([[], ["alt"]]),
        topics=[TopicScore(t, 0.5) for t in rng.sample(TOPICS, rng.randrange(3))],
        source_vocabulary=rng.choice(["schema.org", "schema.org", "dcat", "mixed"]),
    )


def random_corpus(seed: int, size: int = 200) -> list[DatasetRecord]:
    rng = random.Random(seed)
    records = [random_record(rng, n) for n in range(size)]
    return sorted(records, key=lambda r: r.sort_key)


def snapshot_of(records: list[DatasetRecord], date: dt.date = dt.date(2024, 3, 1)) -> CorpusSnapshot:
    records = sorted(records, key=lambda r: r.sort_key)
    return CorpusSnapshot(Manifest(date, len(records), "test"), records)
