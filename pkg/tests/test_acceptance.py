"""Exit criteria; one test per criterion. The run summary prints a PASS/FAIL line for each."""

from __future__ import annotations

import calendar
import datetime as dt
import filecmp
import json
import random
import re
import time
from pathlib import Path

import numpy as np
import pytest

import make_golden
from dsmeta.analytics import (
    build_report,
    compute_churn,
    fit_power_law,
    pareto_sample,
    property_coverage,
    recency_histograms,
    write_report,
)
from dsmeta.dedup import dedup_within_site
from dsmeta.ingest import IngestSource, Page, ingest
from dsmeta.normalize import ContentCategory, bucket_format, classify_license, compute_openness, resolve_last_updated
from dsmeta.normalize.identifiers import find_compact_ids, find_dois
from dsmeta.pipeline import build_from_source, build_snapshot, process_page
from dsmeta.store import read_snapshot, write_snapshot
from helpers import make_record, random_corpus, snapshot_of

GOLDEN = Path(__file__).parent / "fixtures" / "golden"
EXPECTED = GOLDEN / "expected"


def _tree_identical(a: Path, b: Path) -> list[str]:
    """Relative paths that differ (or exist on one side only)."""
    diffs = []
    names = sorted({p.relative_to(a).as_posix() for p in a.rglob("*") if p.is_file()}
                   | {p.relative_to(b).as_posix() for p in b.rglob("*") if p.is_file()})
    for name in names:
        fa, fb = a / name, b / name
        if not (fa.is_file() and fb.is_file() and filecmp.cmp(fa, fb, shallow=False)):
            diffs.append(name)
    return diffs


# -- 1 ------------------------------------------------------------------------------


@pytest.mark.acceptance(1, "golden end-to-end: byte-identical snapshot/report, 65% top-10, 100% title/desc, 63% retention, < 10 s")
def test_golden_end_to_end(tmp_path, config):
    start = time.perf_counter()
    old = build_from_source(IngestSource("directory", GOLDEN / "old_pages"), config, make_golden.OLD_SNAPSHOT_DATE)
    new = build_from_source(IngestSource("directory", GOLDEN / "pages"), config, make_golden.SNAPSHOT_DATE)
    write_snapshot(old, tmp_path / "old_snapshot")
    write_snapshot(new, tmp_path / "snapshot")
    report = build_report(new, old, semweb_formats=config.semweb_formats)
    write_report(report, tmp_path / "report", "md")
    write_report(report, tmp_path / "report_csv", "csv")
    elapsed = time.perf_counter() - start

    diffs = _tree_identical(EXPECTED, tmp_path)
    coverage = {row.property: row.percentage for row in report.property_coverage}
    syntaxes = {
        origin
        for path in (GOLDEN / "pages").rglob("*.html")
        for origin, marker in (("jsonld", b"application/ld+json"), ("microdata", b"itemscope"), ("rdfa", b"typeof="))
        if marker in path.read_bytes()
    }
    domains = len(report.domain_distribution.counts)
    print(f"\ndomains={domains} records={len(new.records)} top10={report.domain_distribution.top_share:.4f} "
          f"title={coverage['title']} description={coverage['description']} "
          f"retention={report.churn.retention_share:.4f} elapsed={elapsed:.2f}s diffs={diffs}")

    assert diffs == []
    assert syntaxes == {"jsonld", "microdata", "rdfa"}
    # the plan is the independent oracle for the engineered ratios
    assert report.domain_distribution.as_dict() == make_golden.expected_domain_counts()
    assert report.domain_distribution.top_share == make_golden.expected_top_share() == 0.65
    assert coverage["title"] == coverage["description"] == 100.0
    assert report.churn.retention_share == make_golden.expected_retention(make_golden.plan_datasets()) == 0.63
    assert elapsed < 10.0


# -- 2 ------------------------------------------------------------------------------


@pytest.mark.acceptance(2, "power-law recovery: alpha=2.08 within +-0.15 in >= 95/100 seeds, < 1 s per fit")
def test_power_law_recovery():
    hits, slowest = 0, 0.0
    for seed in range(100):
        sizes = pareto_sample(2.08, 3700, rng=np.random.default_rng(seed))
        start = time.perf_counter()
        fit = fit_power_law(sizes)
        slowest = max(slowest, time.perf_counter() - start)
        hits += abs(fit.exponent - 2.08) <= 0.15
    print(f"\nwithin tolerance: {hits}/100, slowest fit {slowest * 1000:.1f} ms")
    assert hits >= 95
    assert slowest < 1.0


# -- 3 ------------------------------------------------------------------------------

# hand-labelled; every sample format of the content-category table appears (upper-case block)
FORMAT_CASES = [
    ("CSV", "Tables"), ("XLS", "Tables"),
    ("JSON", "Structured"), ("XML", "Structured"), ("OWL", "Structured"), ("RDF", "Structured"),
    ("PDF", "Documents"), ("DOC", "Documents"), ("HTML", "Documents"),
    ("JPEG", "Images"), ("PNG", "Images"), ("TIFF", "Images"),
    ("ZIP", "Archives"), ("TAR", "Archives"), ("RAR", "Archives"),
    ("TXT", "Text"), ("ASCII", "Text"),
    ("SHP", "Geospatial"), ("GEOJSON", "Geospatial"), ("KML", "Geospatial"),
    ("SBML", "ComputationalBiology"), ("BIOPAX2", "ComputationalBiology"), ("SBGN", "ComputationalBiology"),
    ("WAV", "Audio"), ("MP3", "Audio"), ("OGG", "Audio"),
    ("AVI", "Video"), ("MPG", "Video"),
    ("PPTX", "Presentations"),
    ("NII", "MedicalImaging"), ("DCM", "MedicalImaging"),
    # media types, parameters, dotted and compound forms
    ("text/csv", "Tables"), ("text/csv; charset=utf-8", "Tables"), (".xlsx", "Tables"),
    ("application/vnd.ms-excel", "Tables"), ("application/json", "Structured"),
    ("application/ld+json", "Structured"), ("text/turtle", "Structured"), ("application/rdf+xml", "Structured"),
    ("netcdf", "Structured"), ("application/pdf", "Documents"), ("text/html", "Documents"),
    ("image/jpeg", "Images"), ("image/tiff", "Images"), ("application/zip", "Archives"),
    ("tar.gz", "Archives"), ("text/plain", "Text"), ("application/geo+json", "Geospatial"),
    ("application/vnd.google-earth.kml+xml", "Geospatial"), ("fasta", "ComputationalBiology"),
    ("audio/mpeg", "Audio"), ("video/mp4", "Video"), ("ppt", "Presentations"), ("nii.gz", "MedicalImaging"),
    # unknown -> Other
    ("", "Other"), ("foo", "Other"), ("application/x-unknown-thing", "Other"), ("exe", "Other"),
    ("Excel spreadsheet please", "Other"), ("zzz/yyy", "Other"),
]


@pytest.mark.acceptance(3, "format bucketing: 60-format list agrees 100%, unknown -> Other")
def test_format_bucketing(config):
    assert len(FORMAT_CASES) == 60
    assert {c for _f, c in FORMAT_CASES} == {c.value for c in ContentCategory}
    mismatches = [(f, want, bucket_format(f, config.format_buckets).value)
                  for f, want in FORMAT_CASES if bucket_format(f, config.format_buckets).value != want]
    print(f"\nagreement {60 - len(mismatches)}/60 {mismatches}")
    assert mismatches == []


# -- 4 ------------------------------------------------------------------------------

# raw license strings with hand-assigned "allows redistribution" labels
LICENSE_POOL = [
    ("https://creativecommons.org/licenses/by/4.0/", True),
    ("http://creativecommons.org/licenses/by-nc-nd/3.0/", True),
    ("https://creativecommons.org/publicdomain/zero/1.0/", True),
    ("CC-BY-SA 4.0", True),
    ("Open Database License (ODbL)", True),
    ("Licence Ouverte / Open Licence", True),
    ("All rights reserved", False),
    ("Proprietary - contact the data owner", False),
    ("See terms of use", False),
    ("", False),
]


@pytest.mark.acceptance(4, "openness: compute_openness equals brute force on 1,000 random records")
def test_openness_logic(config):
    rng = random.Random(2024)
    disagreements = 0
    for _ in range(1000):
        picks = rng.sample(LICENSE_POOL, rng.randrange(0, 4))
        free = rng.choice([True, False, None])
        classes = [classify_license(text, config.license_rules) for text, _ in picks]
        expected = free is True or any(label for _text, label in picks)
        disagreements += compute_openness(classes, free) != expected
    print(f"\ndisagreements: {disagreements}/1000")
    assert disagreements == 0


# -- 5 ------------------------------------------------------------------------------


@pytest.mark.acceptance(5, "churn identities on 100 random snapshot pairs; equals set oracle")
def test_churn_identities():
    for seed in range(100):
        rng = random.Random(seed)
        universe = [f"https://site{rng.randrange(5)}.org/d/{i}" for i in range(rng.randrange(1, 300))]
        a = {u for u in universe if rng.random() < 0.6}
        b = {u for u in universe if rng.random() < 0.6}
        snap_a = snapshot_of([make_record(title=u, page_url=u) for u in a])
        snap_b = snapshot_of([make_record(title=u, page_url=u) for u in b])
        result = compute_churn(snap_a, snap_b)
        assert result.retained + result.disappeared == len(a)
        assert result.retained + result.new == len(b)
        assert (result.retained, result.disappeared, result.new) == (len(a & b), len(a - b), len(b - a))
        assert result.retention_share == (len(a & b) / len(a) if a else 0.0)
    print("\n100/100 pairs satisfy the identities and match the set oracle")


# -- 6 ------------------------------------------------------------------------------


def _repository_pages() -> tuple[list[Page], set[str]]:
    def entity(n: int) -> dict:
        return {
            "@type": "Dataset",
            "name": f"Sediment cores batch {n}",
            "description": f"Core logs for batch {n}",
            "publisher": {"@type": "Organization", "name": "Example Repository"},
            "distribution": {"@type": "DataDownload", "contentUrl": f"https://repo.example.org/files/{n}.csv"},
        }

    def page(objects: list[dict]) -> bytes:
        doc = {"@context": "https://schema.org", "@graph": objects}
        return f'<html><head><script type="application/ld+json">{json.dumps(doc)}</script></head></html>'.encode()

    landing = {f"https://repo.example.org/dataset/{n}": n for n in range(8)}
    pages = [Page(url, page([entity(n)])) for url, n in landing.items()]
    pages.append(Page("https://repo.example.org/search?page=1", page([entity(n) for n in range(0, 5)])))
    pages.append(Page("https://repo.example.org/search?page=2", page([entity(n) for n in range(3, 8)])))
    pages.append(Page("https://repo.example.org/browse", page([entity(n) for n in (1, 6)])))
    return pages, set(landing)


@pytest.mark.acceptance(6, "dedup keeps exactly the landing-page records; idempotent on 100 random corpora")
def test_dedup(config):
    pages, landing = _repository_pages()
    snap = build_snapshot(pages, config, dt.date(2024, 3, 1))
    kept = [r.page_url for r in snap.records]
    print(f"\nkept {len(kept)} of {snap.manifest.counters['entities']} entities")
    assert sorted(kept) == sorted(landing)
    assert all(r.page_dataset_count == 1 for r in snap.records)
    for seed in range(100):
        once = dedup_within_site(random_corpus(seed, 80)).kept
        assert dedup_within_site(once).kept == once


# -- 7 ------------------------------------------------------------------------------

# text, expected DOIs, expected compact ids -- labelled by hand from the DOI pattern
# 10.<4-9 digits>/<non-space suffix> (trailing punctuation trimmed) and registered prefix:accession
IDENTIFIER_CASES: list[tuple[str, list[str], list[str]]] = [
    ("https://doi.org/10.5061/dryad.2bvq83bmf", ["10.5061/dryad.2bvq83bmf"], []),
    ("http://dx.doi.org/10.1594/PANGAEA.912345", ["10.1594/PANGAEA.912345"], []),
    ("doi:10.5281/zenodo.1234567", ["10.5281/zenodo.1234567"], []),
    ("DOI: 10.6084/m9.figshare.7654321", ["10.6084/m9.figshare.7654321"], []),
    ("10.1000/182", ["10.1000/182"], []),
    ("Cite as 10.7910/DVN/ABCDEF.", ["10.7910/DVN/ABCDEF"], []),
    ("(10.15468/dl.abc123)", ["10.15468/dl.abc123"], []),
    ("https://doi.org/10.1000%2Fxyz", ["10.1000/xyz"], []),
    ("10.123456789/long-registrant", ["10.123456789/long-registrant"], []),
    ("two: 10.1111/a and 10.2222/b", ["10.1111/a", "10.2222/b"], []),
    ("10.1002/(SICI)1097-4636", ["10.1002/(SICI)1097-4636"], []),
    ("https://doi.org/10.25914/5f1e9c6f8b3c2", ["10.25914/5f1e9c6f8b3c2"], []),
    ("urn:doi:10.4121/uuid:1234", ["10.4121/uuid:1234"], []),
    ("10.5066/P9XYZ123;", ["10.5066/P9XYZ123"], []),
    ("'10.3334/ORNLDAAC/1840'", ["10.3334/ORNLDAAC/1840"], []),
    ("pdb:1ABC", [], ["pdb:1ABC"]),
    ("PDB:1abc", [], ["pdb:1abc"]),
    ("GO:0008150", [], ["go:0008150"]),
    ("taxonomy:9606", [], ["taxonomy:9606"]),
    ("uniprot:P12345", [], ["uniprot:P12345"]),
    ("ncbitaxon:10090", [], ["ncbitaxon:10090"]),
    ("chebi:15377", [], ["chebi:15377"]),
    ("pubmed:31452104", [], ["pubmed:31452104"]),
    ("https://identifiers.org/pdb:2gc4", [], ["pdb:2gc4"]),
    ("https://identifiers.org/taxonomy/9606", [], ["taxonomy:9606"]),
    ("http://identifiers.org/GEO:GSE12345", [], ["geo:GSE12345"]),
    ("see bioproject:PRJNA12345.", [], ["bioproject:PRJNA12345"]),
    ("arrayexpress:E-MTAB-1234", [], ["arrayexpress:E-MTAB-1234"]),
    ("ensembl:ENSG00000139618", [], ["ensembl:ENSG00000139618"]),
    ("orcid:0000-0002-1825-0097", [], ["orcid:0000-0002-1825-0097"]),
    ("rrid:SCR_012345, pdb:3xyz", [], ["rrid:SCR_012345", "pdb:3xyz"]),
    ("kegg.pathway:hsa00010", [], ["kegg.pathway:hsa00010"]),
    ("chembl.compound:CHEMBL25", [], ["chembl.compound:CHEMBL25"]),
    ("doi 10.5281/zenodo.99 and pdb:4hhb", ["10.5281/zenodo.99"], ["pdb:4hhb"]),
    ("https://identifiers.org/doi:10.1038/nbt.3790", ["10.1038/nbt.3790"], ["doi:10.1038/nbt.3790"]),
    # near misses
    ("10.12/too-short-registrant", [], []),
    ("x10.1234/glued", [], []),
    ("10.1234", [], []),
    ("10.1234/", [], []),
    ("version 10.2 / release", [], []),
    ("meeting at 10:30", [], []),
    ("unknownprefix:12345", [], []),
    ("https://example.org/path", [], []),
    ("mailto:pdb@example.org", [], []),
    ("user@pdb:1abc", [], []),
    ("pdb:", [], []),
    ("pmid:12345", [], []),
    ("arXiv:2006.12345", [], []),
    ("ISBN 978-3-16-148410-0", [], []),
    ("", [], []),
]


@pytest.mark.acceptance(7, "identifier extraction: 50-case fixture matches hand-labelled regex oracle")
def test_identifier_extraction(config):
    assert len(IDENTIFIER_CASES) == 50
    failures = []
    for text, dois, compact in IDENTIFIER_CASES:
        got = (find_dois(text), find_compact_ids(text, config.prefixes))
        if got != (dois, compact):
            failures.append((text, got))
    print(f"\nagreement {50 - len(failures)}/50 {failures}")
    assert failures == []


# -- 8 ------------------------------------------------------------------------------


def _random_date(rng: random.Random) -> dt.date | None:
    if rng.random() < 0.35:
        return None
    return dt.date(2000, 1, 1) + dt.timedelta(days=rng.randrange(9000))


@pytest.mark.acceptance(8, "date resolution: max-of-dates on 1,000 tuples; page fallback iff metadata dates absent")
def test_date_resolution(config):
    rng = random.Random(8)
    for _ in range(1000):
        created, published, modified, page_mod = (_random_date(rng) for _ in range(4))
        meta = [d for d in (created, published, modified) if d is not None]
        expected = max(meta) if meta else page_mod
        assert resolve_last_updated(created, published, modified, page_mod) == expected

    # end to end: the page-level date is used exactly when the entity carries no dates
    fired = 0
    for n in range(200):
        meta = {k: d.isoformat() for k in ("dateCreated", "datePublished", "dateModified")
                if (d := _random_date(rng)) is not None}
        page_mod = _random_date(rng) or dt.date(2019, 5, 5)
        doc = {"@context": "https://schema.org", "@type": "Dataset", "name": f"d{n}", "description": "x", **meta}
        html = f'<html><script type="application/ld+json">{json.dumps(doc)}</script></html>'.encode()
        [record] = process_page(Page(f"https://example.org/{n}", html, None, page_mod.isoformat()), config).records
        uses_page = not meta
        fired += uses_page
        if uses_page:
            assert record.last_updated == page_mod
        else:
            assert record.last_updated == max(dt.date.fromisoformat(v) for v in meta.values())
    print(f"\nfallback fired on {fired}/200 pages, all without metadata dates")
    assert 0 < fired < 200


# -- 9 ------------------------------------------------------------------------------

COVERAGE_ORACLE = {
    "title": lambda r: bool(r.title),
    "description": lambda r: bool(r.description),
    "provider": lambda r: bool(r.providers),
    "keywords": lambda r: bool(r.keywords),
    "license": lambda r: bool(r.licenses),
    "url": lambda r: bool(r.url),
    "temporal_coverage": lambda r: bool(r.temporal_coverage),
    "spatial_coverage": lambda r: bool(r.spatial_coverage),
    "data_download": lambda r: bool(r.downloads),
    "catalog": lambda r: bool(r.catalog),
    "variable": lambda r: bool(r.variables),
    "authors": lambda r: bool(r.authors),
    "same_as": lambda r: bool(r.same_as),
    "alternate_name": lambda r: bool(r.alternate_names),
    "is_accessible_for_free": lambda r: r.is_accessible_for_free is not None,
    "date_created": lambda r: r.dates.created is not None,
    "date_published": lambda r: r.dates.published is not None,
    "date_modified": lambda r: r.dates.modified is not None,
}


def _months_back(day: dt.date, k: int) -> dt.date:
    total = day.year * 12 + (day.month - 1) - k
    year, month = divmod(total, 12)
    month += 1
    return dt.date(year, month, min(day.day, calendar.monthrange(year, month)[1]))


def _brute_bins(dates: list[dt.date], ref: dt.date, n_bins: int, step: int) -> tuple[list[int], int]:
    counts, older = [0] * n_bins, 0
    for d in dates:
        for k in range(n_bins):
            if d > _months_back(ref, (k + 1) * step):
                counts[k] += 1
                break
        else:
            older += 1
    return counts, older


@pytest.mark.acceptance(9, "coverage and recency histograms equal brute force on 100 corpora; known-date share 85% on fixture")
def test_coverage_and_histograms():
    ref = dt.date(2024, 3, 1)
    for seed in range(100):
        records = random_corpus(seed, 150)
        got = {row.property: row.count for row in property_coverage(records)}
        assert got == {p: sum(1 for r in records if f(r)) for p, f in COVERAGE_ORACLE.items()}
        stats = recency_histograms(records, ref)
        dated = [r.last_updated for r in records if r.last_updated is not None]
        assert stats.dated == len(dated)
        assert (stats.monthly.counts, stats.monthly.older) == _brute_bins(dated, ref, 12, 1)
        assert (stats.yearly.counts, stats.yearly.older) == _brute_bins(dated, ref, 5, 12)

    snapshot = read_snapshot(EXPECTED / "snapshot")
    share = recency_histograms(snapshot, snapshot.snapshot_date).known_date_share
    print(f"\nfixture known-date share {share:.4f}")
    assert share == make_golden.expected_known_date_share(make_golden.plan_datasets()) == 0.85


# -- 10 -----------------------------------------------------------------------------


@pytest.mark.slow
@pytest.mark.acceptance(10, "throughput: 10,000 pages extract+normalize <= 60 s single-threaded; parallel snapshot identical")
def test_throughput(config):
    base = list(ingest(IngestSource("directory", GOLDEN / "pages")))
    pages = [Page(f"{p.page_url}?copy={i}", p.html, None, p.last_modified) for i in range(50) for p in base]
    assert len(pages) == 10_000

    start = time.perf_counter()
    serial = build_snapshot(pages, config, make_golden.SNAPSHOT_DATE, workers=1)
    elapsed = time.perf_counter() - start
    parallel = build_snapshot(pages, config, make_golden.SNAPSHOT_DATE, workers=4)
    print(f"\n10,000 pages single-threaded in {elapsed:.1f} s; {serial.manifest.counters['entities']} entities")
    assert elapsed <= 60.0
    assert parallel.records == serial.records
    assert parallel.manifest == serial.manifest
    assert re.fullmatch(r"[0-9a-f]{32}", serial.records[0].id)
