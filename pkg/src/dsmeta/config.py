"""Loading the line-oriented normalization config directory.

A config directory holds these UTF-8, tab-separated files:

==================  ============================================================
``mapping.tsv``     canonical property, comma-separated source predicates
``licenses.tsv``    class, redistribution, commercial, url|name, regex
``prefixes.tsv``    compact-identifier prefix, provider namespace
``formats.tsv``     format key (extension or media type), content category
``government.tsv``  host-suffix pattern, provenance (listed|extension)
``semweb.tsv``      one semantic-web format key per line
``topics.tsv``      topic, phrase, weight
``settings.tsv``    key, value
==================  ============================================================

If ``checksums.sha256`` is present (``sha256sum`` format) every file it
lists must match, otherwise loading fails.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from dsmeta.errors import ConfigError
from dsmeta.model import PropertyMapping, parse_mapping_table
from dsmeta.normalize.domains import GovernmentPattern, parse_government_patterns
from dsmeta.normalize.formats import ContentCategory, parse_format_buckets
from dsmeta.normalize.identifiers import PrefixRegistry, parse_prefix_registry
from dsmeta.normalize.licenses import LicenseRule, parse_license_table
from dsmeta.topics import TopicLexicon, parse_lexicon

CONFIG_FILES = (
    "mapping.tsv",
    "licenses.tsv",
    "prefixes.tsv",
    "formats.tsv",
    "government.tsv",
    "semweb.tsv",
    "topics.tsv",
    "settings.tsv",
)
CHECKSUM_FILE = "checksums.sha256"
ENV_VAR = "DSMETA_CONFIG"

DEFAULT_SETTINGS = {
    "topic_threshold": "0.05",
    "topic_weight_title": "3",
    "topic_weight_description": "2",
    "topic_weight_keywords": "2",
    "topic_weight_page_text": "1",
    "date_order": "mdy",
    "powerlaw_quantile": "0.5",
    "top_k_domains": "10",
    "top_k_providers": "20",
    "small_provider_limit": "10",
}


@dataclass
class NormalizationConfig:
    mappings: list[PropertyMapping]
    license_rules: list[LicenseRule]
    prefixes: PrefixRegistry
    format_buckets: dict[str, ContentCategory]
    government: list[GovernmentPattern]
    semweb_formats: frozenset[str]
    lexicon: TopicLexicon
    settings: dict[str, str]
    checksums: dict[str, str] = field(default_factory=dict)
    source: str = ""

    def setting(self, key: str, cast=str):
        try:
            return cast(self.settings[key])
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"setting {key!r}: {exc}") from None

    @property
    def date_order(self) -> str:
        return self.setting("date_order")


def default_config_dir() -> Path:
    return Path(str(resources.files("dsmeta") / "data" / "config"))


def resolve_config_dir(explicit: str | os.PathLike | None = None) -> Path:
    """Explicit path, then ``$DSMETA_CONFIG``, then the bundled config."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return default_config_dir()


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def verify_checksums(directory: Path, contents: dict[str, bytes]) -> None:
    path = directory / CHECKSUM_FILE
    if not path.exists():
        return
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected '<sha256>  <file>'")
        digest, name = parts[0].lower(), parts[1].lstrip("*")
        data = contents.get(name)
        if data is None:
            file = directory / name
            if not file.exists():
                raise ConfigError(f"{path}:{lineno}: listed file {name} is missing")
            data = file.read_bytes()
        if _sha256(data) != digest:
            raise ConfigError(f"checksum mismatch for {name} in {directory}")


def write_checksums(directory: str | os.PathLike) -> Path:
    directory = Path(directory)
    lines = [f"{_sha256((directory / n).read_bytes())}  {n}" for n in CONFIG_FILES if (directory / n).exists()]
    out = directory / CHECKSUM_FILE
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return out


def load_config(directory: str | os.PathLike | None = None) -> NormalizationConfig:
    directory = resolve_config_dir(directory)
    if not directory.is_dir():
        raise ConfigError(f"config directory not found: {directory}")
    contents: dict[str, bytes] = {}
    for name in CONFIG_FILES:
        path = directory / name
        if not path.exists():
            raise ConfigError(f"missing config file {path}")
        contents[name] = path.read_bytes()
    verify_checksums(directory, contents)

    def text(name: str) -> str:
        try:
            return contents[name].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigError(f"{name}: not UTF-8 ({exc.reason})") from None

    def parse(name: str, parser, *args):
        try:
            return parser(text(name), *args)
        except ValueError as exc:
            raise ConfigError(f"{directory / name}: {exc}") from None

    try:
        settings = dict(DEFAULT_SETTINGS)
        for line in text("settings.tsv").splitlines():
            if line.strip() and not line.startswith("#"):
                key, _, value = line.partition("\t")
                settings[key.strip()] = value.strip()
        field_weights = {
            name: float(settings[f"topic_weight_{name}"])
            for name in ("title", "description", "keywords", "page_text")
        }
        if settings["date_order"] not in ("mdy", "dmy"):
            raise ValueError(f"date_order must be mdy or dmy, got {settings['date_order']!r}")
        semweb = frozenset(
            line.strip().lower()
            for line in text("semweb.tsv").splitlines()
            if line.strip() and not line.startswith("#")
        )
        config = NormalizationConfig(
            mappings=parse("mapping.tsv", parse_mapping_table),
            license_rules=parse("licenses.tsv", parse_license_table),
            prefixes=parse("prefixes.tsv", parse_prefix_registry),
            format_buckets=parse("formats.tsv", parse_format_buckets),
            government=parse("government.tsv", parse_government_patterns),
            semweb_formats=semweb,
            lexicon=parse("topics.tsv", parse_lexicon, float(settings["topic_threshold"]), field_weights),
            settings=settings,
            checksums={name: _sha256(data) for name, data in contents.items()},
            source=str(directory),
        )
    except ValueError as exc:
        raise ConfigError(f"{directory}: {exc}") from None
    return config
