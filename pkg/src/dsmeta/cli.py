"""Command-line interface: build, analyze, churn, usage, validate-page."""

from __future__ import annotations

import argparse
import datetime as dt
import json
import logging
import sys
from pathlib import Path

from dsmeta import __version__
from dsmeta.analytics import build_report, compute_churn, usage_topic_distribution, write_report
from dsmeta.config import load_config
from dsmeta.dedup import is_valid
from dsmeta.errors import ConfigError, DsmetaError
from dsmeta.ingest import IngestSource, Page
from dsmeta.pipeline import build_from_source, process_page
from dsmeta.store import read_snapshot, write_snapshot

log = logging.getLogger("dsmeta")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONFIG = 2


def _date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def cmd_build(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    source_path = Path(args.source)
    kind = "directory" if source_path.is_dir() else "url-list"
    source = IngestSource(
        kind,
        source_path,
        url_map=Path(args.url_map) if args.url_map else None,
        delay_ms=args.delay_ms,
        max_pages=args.max_pages,
        respect_robots=not args.no_robots,
    )
    snapshot = build_from_source(source, config, args.snapshot_date or dt.date.today(), workers=args.workers)
    write_snapshot(snapshot, args.out)
    c = snapshot.manifest.counters
    print(
        f"wrote {c['records']} records to {args.out} "
        f"(pages {c['pages_seen']}, entities {c['entities']}, invalid {c['dropped_invalid']}, "
        f"duplicates {c['collapsed_duplicates']})"
    )
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    snapshot = read_snapshot(args.snapshot)
    compare = read_snapshot(args.compare) if args.compare else None
    report = build_report(
        snapshot,
        compare,
        semweb_formats=config.semweb_formats,
        top_k_domains=config.setting("top_k_domains", int),
        top_k_providers=config.setting("top_k_providers", int),
        small_provider_limit=config.setting("small_provider_limit", int),
        powerlaw_quantile=config.setting("powerlaw_quantile", float),
    )
    for path in write_report(report, args.report, args.format):
        print(path)
    return EXIT_OK


def cmd_churn(args: argparse.Namespace) -> int:
    result = compute_churn(read_snapshot(args.old), read_snapshot(args.new))
    print(f"old_urls\t{result.old_count}")
    print(f"new_urls\t{result.new_count}")
    print(f"retained\t{result.retained}")
    print(f"disappeared\t{result.disappeared}")
    print(f"new\t{result.new}")
    print(f"retention_share\t{result.retention_share:.6f}")
    return EXIT_OK


def cmd_usage(args: argparse.Namespace) -> int:
    snapshot = read_snapshot(args.snapshot)
    try:
        ids = Path(args.log).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DsmetaError(f"cannot read log {args.log}: {exc.strerror}") from None
    result = usage_topic_distribution(ids, snapshot)
    print(f"# log entries {result.log_entries}, distinct {result.distinct_ids}, "
          f"matched {result.matched}, unknown {result.unknown_count}")
    print("topic\tdatasets\tshare")
    for topic, count, share in result.rows:
        print(f"{topic}\t{count}\t{share:.6f}")
    return EXIT_OK


def cmd_validate_page(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    try:
        html = Path(args.file).read_bytes()
    except OSError as exc:
        raise DsmetaError(f"cannot read {args.file}: {exc.strerror}") from None
    result = process_page(Page(args.url, html), config, keep_graph=True)
    graph = result.graph
    by_origin: dict[str, int] = {}
    for t in graph.triples:
        by_origin[t.origin] = by_origin.get(t.origin, 0) + 1
    print(f"triples: {len(graph.triples)} " + " ".join(f"{k}={v}" for k, v in sorted(by_origin.items())))
    for diag in result.diagnostics:
        print(f"diagnostic: {diag.code}: {diag.message}")
    print(f"dataset entities: {len(result.records)}")
    for record in result.records:
        status = "valid" if is_valid(record) else "invalid (missing title or description)"
        print(f"--- entity {record.entity_index}: {status}")
        print(json.dumps(record.to_json_dict(), ensure_ascii=False, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dsmeta", description="Dataset metadata corpus builder and analyzer.")
    parser.add_argument("--version", action="version", version=f"dsmeta {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log per-page diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="extract and normalize pages into a snapshot")
    p.add_argument("--source", required=True, help="directory of saved pages or a file listing URLs")
    p.add_argument("--url-map", help="file-path<TAB>URL map (default: <source>/urls.tsv)")
    p.add_argument("--config", help="configuration directory")
    p.add_argument("--out", required=True, help="snapshot directory to create")
    p.add_argument("--snapshot-date", type=_date, help="snapshot date (default: today)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--delay-ms", type=int, default=1000, help="delay between fetches")
    p.add_argument("--max-pages", type=int)
    p.add_argument("--no-robots", action="store_true", help="ignore robots.txt")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="compute corpus statistics")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--compare", help="older snapshot for language deltas and churn")
    p.add_argument("--report", required=True, help="output directory")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--config", help="configuration directory")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("churn", help="URL turnover between two snapshots")
    p.add_argument("--old", required=True)
    p.add_argument("--new", required=True)
    p.set_defaults(func=cmd_churn)

    p = sub.add_parser("usage", help="topic distribution of datasets in a result log")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--log", required=True, help="one dataset id per line")
    p.set_defaults(func=cmd_usage)

    p = sub.add_parser("validate-page", help="lint a single saved page")
    p.add_argument("file")
    p.add_argument("--url", required=True)
    p.add_argument("--config", help="configuration directory")
    p.set_defaults(func=cmd_validate_page)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"dsmeta: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DsmetaError, OSError, ValueError) as exc:
        print(f"dsmeta: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
