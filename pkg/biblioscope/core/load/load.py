"""Loaders for export files, peer-set files, stop-lists and study config files."""

import asyncio
import csv
import io
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from biblioscope.core.load.config import PEER_CSV_COLUMNS
from biblioscope.core.load.countries import CountryTable
from biblioscope.core.load.parse import (
    MalformedRecord,
    ParseError,
    collapse,
    normalize_keyword,
    parse_export,
)
from biblioscope.core.shapes import (
    ARTICLE,
    BiblioRecord,
    Corpus,
    ParseIssue,
    PeerSet,
    Provenance,
    StudyConfig,
)

logger = logging.getLogger(__name__)

EXPORT_SUFFIXES = {".txt", ".ciw", ".isi"}
PeerKey = tuple[str, int]


class ConfigError(Exception):
    """Raised when a study config file is missing or invalid."""


def expand_inputs(paths: list[str | Path], suffixes: set[str]) -> list[Path]:
    """Files as given, directories expanded to their matching files in name order."""
    result: list[Path] = []
    for path in map(Path, paths):
        if path.is_dir():
            result.extend(sorted(p for p in path.iterdir() if p.suffix.lower() in suffixes))
        elif path.exists():
            result.append(path)
        else:
            raise FileNotFoundError(f"File not found: {path}")
    return result


async def _parse_file(
    path: Path, strict: bool, countries: CountryTable | None, semaphore: asyncio.Semaphore
) -> Corpus:
    async with semaphore:
        data = await asyncio.to_thread(path.read_bytes)
        return await asyncio.to_thread(parse_export, data, path.name, strict, countries)


async def parse_files(
    paths: list[Path],
    strict: bool = False,
    countries: CountryTable | None = None,
    max_concurrent: int = 4,
) -> list[Corpus]:
    """Parse files concurrently; results keep the order of `paths`."""
    semaphore = asyncio.Semaphore(max_concurrent)
    return list(
        await asyncio.gather(*(_parse_file(p, strict, countries, semaphore) for p in paths))
    )


def merge_corpora(corpora: list[Corpus], strict: bool = False) -> Corpus:
    """Concatenate corpora in order, dropping records whose id was already seen."""
    records: list[BiblioRecord] = []
    issues: list[ParseIssue] = []
    sources: list[str] = []
    seen: set[str] = set()

    for corpus in corpora:
        sources.extend(corpus.provenance.sources)
        issues.extend(corpus.provenance.issues)
        for record in corpus.records:
            if record.id in seen:
                source = corpus.provenance.sources[0] if corpus.provenance.sources else "<stream>"
                error = MalformedRecord(f"duplicate record id '{record.id}'", source)
                if strict:
                    raise error
                logger.warning(f"Skipping duplicate record: {error}")
                issues.append(error.as_issue())
                continue
            seen.add(record.id)
            records.append(record)

    return Corpus(
        records=tuple(records),
        provenance=Provenance(
            sources=tuple(sources),
            parsed_at=datetime.now(timezone.utc),
            issues=tuple(issues),
        ),
    )


def load_corpus(
    paths: list[str | Path],
    strict: bool = False,
    countries: CountryTable | None = None,
    max_concurrent: int = 4,
) -> Corpus:
    """Parse and merge one or more export files (directories are expanded)."""
    files = expand_inputs(paths, EXPORT_SUFFIXES)
    if not files:
        raise FileNotFoundError(f"No export files found in: {', '.join(map(str, paths))}")
    corpora = asyncio.run(parse_files(files, strict, countries, max_concurrent))
    return merge_corpora(corpora, strict)


def _peer_counts_from_csv(text: str, source: str) -> dict[PeerKey, list[int]]:
    reader = csv.DictReader(io.StringIO(text))
    missing = [c for c in PEER_CSV_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise ParseError(f"{source}: missing peer CSV columns: {', '.join(missing)}")

    counts: dict[PeerKey, list[int]] = {}
    for row in reader:
        try:
            journal = collapse(row["journal"]).upper()
            year = int(row["year"])
            cited = int(row["times_cited"])
        except (TypeError, ValueError) as e:
            raise ParseError(f"{source}:{reader.line_num}: invalid peer row: {e}") from e
        if not journal or cited < 0:
            raise ParseError(f"{source}:{reader.line_num}: invalid peer row")
        counts.setdefault((journal, year), []).append(cited)
    return counts


def load_peer_sets(
    paths: list[str | Path],
    strict: bool = False,
    countries: CountryTable | None = None,
    max_concurrent: int = 4,
) -> dict[PeerKey, PeerSet]:
    """Group peer citation counts by (journal, year).

    Tagged exports contribute their ARTICLE records (deduplicated by id across
    files); CSV files contribute one peer per `journal,year,times_cited` row.
    """
    files = expand_inputs(paths, EXPORT_SUFFIXES | {".csv"})
    counts: dict[PeerKey, list[int]] = {}

    csv_files = [f for f in files if f.suffix.lower() == ".csv"]
    tagged_files = [f for f in files if f.suffix.lower() != ".csv"]

    for path in csv_files:
        text = path.read_text(encoding="utf-8-sig")
        for key, values in _peer_counts_from_csv(text, path.name).items():
            counts.setdefault(key, []).extend(values)

    if tagged_files:
        corpora = asyncio.run(parse_files(tagged_files, strict, countries, max_concurrent))
        seen: set[str] = set()
        for corpus in corpora:
            for record in corpus.records:
                if record.doc_type != ARTICLE or record.id in seen or not record.journal:
                    continue
                seen.add(record.id)
                counts.setdefault((record.journal, record.year), []).append(record.times_cited)

    return {
        key: PeerSet(journal=key[0], year=key[1], citation_counts=tuple(values))
        for key, values in sorted(counts.items())
    }


def load_stoplist(path: str | Path | None) -> set[str]:
    """One term per line; '#' starts a comment. Terms are normalized like keywords."""
    if path is None:
        return set()
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Stop-list not found: {path}")
    terms = (line.split("#", 1)[0] for line in path.read_text(encoding="utf-8").splitlines())
    return {normalize_keyword(t).strip(".,;:") for t in terms if t.strip()}


def load_study_config(file_path: str | Path | None, overrides: dict[str, Any] | None = None) -> StudyConfig:
    """Load a YAML study config and apply overrides on top of it.

    Keys mirror the command-line flags with dashes turned into underscores.
    """
    data: dict[str, Any] = {}
    if file_path is not None:
        file_path = Path(file_path)
        if not file_path.exists():
            raise ConfigError(f"Config file not found: {file_path}")
        with open(file_path, "r") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"{file_path}: expected a mapping of key: value pairs")
        data = {str(k).replace("-", "_"): v for k, v in loaded.items()}

        # Relative paths in the config resolve against the config file
        base = file_path.parent
        for key in ("corpus", "peers"):
            if isinstance(data.get(key), str):
                data[key] = [data[key]]
            if key in data:
                data[key] = [str(base / p) for p in data[key]]
        for key in ("stoplist", "countries"):
            if data.get(key):
                data[key] = str(base / data[key])

    data.update({k: v for k, v in (overrides or {}).items() if v is not None})

    try:
        return StudyConfig(**data)
    except ValidationError as e:
        source = file_path if file_path is not None else "command line"
        raise ConfigError(f"Invalid study config ({source}):\n{e}") from e
