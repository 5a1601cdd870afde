"""Parser for field-tagged bibliographic export files.

Layout: optional header lines (FN, VR), then records made of `XX value`
lines where XX is a two-character tag; continuation lines start with three
spaces; each record ends with `ER` and the file ends with `EF`.
"""

import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone

from biblioscope.core.load.config import (
    CONTINUATION,
    END_OF_FILE,
    END_OF_RECORD,
    HEADER_TAGS,
    LINE_ITEM_TAGS,
)
from biblioscope.core.load.countries import (
    CountryTable,
    default_table,
    normalize_country,
    strip_author_groups,
)
from biblioscope.core.shapes import UNRESOLVED, BiblioRecord, Corpus, ParseIssue, Provenance

logger = logging.getLogger(__name__)


class ParseError(Exception):
    """Exception raised when parsing fails."""


class EmptyInput(ParseError):
    """The export contains no data at all."""


class MalformedRecord(ParseError):
    """A record block violates the tagged format."""

    def __init__(self, message: str, source: str = "<stream>", line: int | None = None):
        self.source = source
        self.line = line
        self.reason = message
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")

    def as_issue(self) -> ParseIssue:
        return ParseIssue(source=self.source, line=self.line, message=self.reason)


def collapse(text: str) -> str:
    return " ".join(text.split())


def normalize_author(name: str) -> str:
    """Uppercase, strip periods, collapse whitespace: 'Smith,  A.' -> 'SMITH, A'."""
    return collapse(name.replace(".", "")).upper()


def normalize_keyword(term: str) -> str:
    return collapse(term).lower()


def decode_export(data: bytes | str, source: str = "<stream>") -> str:
    """UTF-8 (BOM tolerated); falls back to Latin-1 with a warning."""
    if isinstance(data, str):
        return data.lstrip("\ufeff")
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError:
        logger.warning(f"{source}: not valid UTF-8, decoding as Latin-1")
        return data.decode("latin-1")


@dataclass
class _Block:
    """Raw tag values of one record: tag -> physical line values."""

    start_line: int
    fields: dict[str, list[str]] = field(default_factory=dict)
    last_tag: str | None = None
    broken: MalformedRecord | None = None

    def add(self, tag: str, value: str) -> None:
        self.fields.setdefault(tag, []).append(value)
        self.last_tag = tag

    def extend(self, value: str) -> None:
        assert self.last_tag is not None
        self.fields[self.last_tag].append(value)


def _joined(block: _Block, tag: str) -> str:
    return collapse(" ".join(block.fields.get(tag, [])))


def _split(text: str) -> list[str]:
    return [item for item in (collapse(part) for part in text.split(";")) if item]


def _items(block: _Block, tag: str) -> list[str]:
    if tag in LINE_ITEM_TAGS:
        items: list[str] = []
        for line in block.fields.get(tag, []):
            if tag == "C1":
                line = strip_author_groups(line)
            items.extend(_split(line))
        return items
    return _split(_joined(block, tag))


def _parse_int(block: _Block, tag: str, source: str) -> int | None:
    text = _joined(block, tag)
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        raise MalformedRecord(f"{tag} is not an integer: '{text}'", source, block.start_line)


def _build_record(block: _Block, ordinal: int, source: str, countries: CountryTable) -> BiblioRecord:
    year = _parse_int(block, "PY", source)
    if year is None:
        raise MalformedRecord("record has no PY (publication year)", source, block.start_line)
    if not 1900 <= year <= 2100:
        raise MalformedRecord(f"PY {year} outside [1900, 2100]", source, block.start_line)

    times_cited = _parse_int(block, "TC", source) or 0
    if times_cited < 0:
        raise MalformedRecord(f"TC must not be negative: {times_cited}", source, block.start_line)

    addresses = _items(block, "C1")
    found = {normalize_country(address, countries) for address in addresses}

    return BiblioRecord(
        id=_joined(block, "UT") or f"{source}:{ordinal}",
        doc_type=_joined(block, "DT").upper() or "UNKNOWN",
        authors=[normalize_author(a) for a in _items(block, "AU") if normalize_author(a)],
        journal=_joined(block, "SO").upper(),
        year=year,
        author_keywords=[normalize_keyword(k) for k in _items(block, "DE")],
        keywords_plus=[normalize_keyword(k) for k in _items(block, "ID")],
        addresses=addresses,
        countries=sorted(found) if found else [UNRESOLVED],
        categories=[c.upper() for c in _items(block, "WC")],
        times_cited=times_cited,
    )


def parse_export(
    data: bytes | str,
    source: str = "<stream>",
    strict: bool = False,
    countries: CountryTable | None = None,
) -> Corpus:
    """Parse one export into a Corpus, in file order.

    Under lenient mode malformed records are skipped and reported on the
    corpus provenance; under strict mode the first one raises.
    """
    text = decode_export(data, source)
    if not text.strip():
        raise EmptyInput(f"{source}: input is empty")

    countries = countries or default_table()
    records: list[BiblioRecord] = []
    issues: list[ParseIssue] = []
    seen_ids: set[str] = set()
    block: _Block | None = None
    ordinal = 0

    def fail(error: MalformedRecord) -> None:
        if strict:
            raise error
        logger.warning(f"Skipping malformed record: {error}")
        issues.append(error.as_issue())

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()

        if not line:
            if block is not None and strict:
                raise MalformedRecord("blank line inside record", source, lineno)
            continue

        if line.startswith(CONTINUATION):
            if block is None or block.last_tag is None:
                fail(MalformedRecord("continuation line outside of a record", source, lineno))
            elif block.broken is None:
                block.extend(line.strip())
            continue

        if len(line) < 2 or (len(line) > 2 and line[2] != " "):
            error = MalformedRecord(f"invalid tag line '{line}'", source, lineno)
            if block is None:
                fail(error)
            elif block.broken is None:
                if strict:
                    raise error
                block.broken = error
            continue

        tag, value = line[:2], line[3:].strip()

        if tag == END_OF_FILE:
            break
        if tag in HEADER_TAGS and block is None:
            continue
        if tag == END_OF_RECORD:
            if block is None:
                fail(MalformedRecord("ER without a record", source, lineno))
                continue
            ordinal += 1
            try:
                if block.broken is not None:
                    raise block.broken
                record = _build_record(block, ordinal, source, countries)
                if record.id in seen_ids:
                    raise MalformedRecord(f"duplicate record id '{record.id}'", source, block.start_line)
                seen_ids.add(record.id)
                records.append(record)
            except MalformedRecord as error:
                fail(error)
            block = None
            continue

        if block is None:
            block = _Block(start_line=lineno)
        if block.broken is None:
            block.add(tag, value)

    if block is not None:
        fail(MalformedRecord("record without ER", source, block.start_line))

    return Corpus(
        records=tuple(records),
        provenance=Provenance(
            sources=(source,),
            parsed_at=datetime.now(timezone.utc),
            issues=tuple(issues),
        ),
    )


def filter_research_articles(corpus: Corpus, year_min: int, year_max: int) -> Corpus:
    """Keep ARTICLE records published in [year_min, year_max], in input order."""
    if year_min > year_max:
        raise ValueError(f"year_min ({year_min}) must not exceed year_max ({year_max})")
    return corpus.with_records(
        [r for r in corpus.records if r.doc_type == "ARTICLE" and year_min <= r.year <= year_max]
    )
