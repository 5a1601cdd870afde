"""Descriptive corpus statistics: document types, yearly output, authorship,
international cooperation and journal/category distributions."""

import logging
from collections import Counter
from fractions import Fraction

from biblioscope.core.shapes import (
    UNRESOLVED,
    AuthorshipSummary,
    CooperationResult,
    Corpus,
    CorpusOverview,
    FrequencyTable,
    StatField,
)

logger = logging.getLogger(__name__)


class EmptyCorpus(Exception):
    """Raised when a statistic is requested over a corpus with no records."""


def _require_records(corpus: Corpus, what: str) -> None:
    if len(corpus) == 0:
        raise EmptyCorpus(f"Cannot compute {what} of an empty corpus")


def doc_type_distribution(corpus: Corpus) -> FrequencyTable:
    _require_records(corpus, "document types")
    counts = Counter(record.doc_type for record in corpus.records)
    return FrequencyTable.from_counts(counts, len(corpus))


def yearly_counts(corpus: Corpus) -> FrequencyTable:
    """Papers per publication year, keyed by the year as a string."""
    _require_records(corpus, "yearly output")
    counts = Counter(str(record.year) for record in corpus.records)
    return FrequencyTable.from_counts(counts, len(corpus))


def chronological(table: FrequencyTable) -> FrequencyTable:
    """Re-order a year-keyed table by year ascending."""
    return FrequencyTable(
        entries=tuple(sorted(table.entries, key=lambda e: int(e.key))),
        total=table.total,
    )


def authorship_summary(corpus: Corpus) -> AuthorshipSummary:
    """Authorship structure over records that list at least one author."""
    _require_records(corpus, "authorship")

    excluded = [r.id for r in corpus.records if not r.authors]
    for record_id in excluded:
        logger.warning(f"Record {record_id} has no authors; excluded from authorship statistics")

    authored = [r for r in corpus.records if r.authors]
    if not authored:
        raise EmptyCorpus("No record in the corpus lists any author")

    sizes = [len(set(r.authors)) for r in authored]
    size_counts = Counter(sizes)
    modal = min(size_counts, key=lambda n: (-size_counts[n], n))

    papers_per_author = Counter(a for r in authored for a in set(r.authors))
    prolific, prolific_count = min(papers_per_author.items(), key=lambda item: (-item[1], item[0]))

    return AuthorshipSummary(
        papers=len(authored),
        distinct_authors=len(papers_per_author),
        mean_authors_per_paper=Fraction(sum(sizes), len(authored)),
        modal_authors_per_paper=modal,
        single_author_fraction=Fraction(size_counts.get(1, 0), len(authored)),
        max_authors=max(sizes),
        most_prolific_author=prolific,
        most_prolific_count=prolific_count,
        author_count_distribution=FrequencyTable.from_counts(
            {str(n): c for n, c in size_counts.items()}, len(authored)
        ),
        excluded_records=tuple(excluded),
    )


def cooperation_table(corpus: Corpus, home_country: str) -> CooperationResult:
    """Foreign partner countries of papers involving `home_country`.

    A paper is international when its countries include the home country and
    at least one other resolved country; it counts once for every foreign
    country it involves.
    """
    _require_records(corpus, "cooperation")
    home = " ".join(home_country.split()).upper()

    unresolved = [r.id for r in corpus.records if set(r.countries) <= {UNRESOLVED}]
    if unresolved:
        logger.warning(f"{len(unresolved)} record(s) without a resolved country: {', '.join(unresolved)}")

    partners: Counter[str] = Counter()
    international = 0
    for record in corpus.records:
        if home not in record.countries:
            continue
        foreign = set(record.countries) - {home, UNRESOLVED}
        if foreign:
            international += 1
            partners.update(foreign)

    if not any(home in r.countries for r in corpus.records):
        logger.warning(f"No record lists the home country {home}")

    involved = {c for r in corpus.records for c in r.countries} - {UNRESOLVED}
    return CooperationResult(
        home_country=home,
        table=FrequencyTable.from_counts(partners, len(corpus)),
        international_papers=international,
        international_fraction=Fraction(international, len(corpus)),
        countries_involved=len(involved),
    )


def field_distribution(corpus: Corpus, field: StatField) -> FrequencyTable:
    """Journals count once per paper; categories count once per paper per category."""
    _require_records(corpus, f"{field} distribution")
    counts: Counter[str] = Counter()
    if field == "journal":
        counts.update(r.journal for r in corpus.records if r.journal)
    elif field == "category":
        for record in corpus.records:
            counts.update(set(record.categories))
    else:
        raise ValueError(f"Unknown field: {field}")
    return FrequencyTable.from_counts(counts, len(corpus))


def corpus_overview(corpus: Corpus) -> CorpusOverview:
    _require_records(corpus, "an overview")
    years = [r.year for r in corpus.records]
    return CorpusOverview(
        records=len(corpus),
        distinct_journals=len({r.journal for r in corpus.records if r.journal}),
        distinct_categories=len({c for r in corpus.records for c in r.categories}),
        distinct_countries=len({c for r in corpus.records for c in r.countries} - {UNRESOLVED}),
        first_year=min(years),
        last_year=max(years),
    )
