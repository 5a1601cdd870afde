"""CSV tables. Every writer returns the CSV text; the caller decides where it goes."""

import csv
import io
from collections.abc import Iterable
from fractions import Fraction

from biblioscope.core.coword.graph import CooccurrenceGraph
from biblioscope.core.formatting import percent, round_half_up, trimmed
from biblioscope.core.shapes import (
    QUADRANTS,
    AuthorshipSummary,
    ClusterSet,
    CooperationResult,
    FrequencyTable,
    PriOverview,
    PriRange,
    PriScore,
    Quadrant,
    StrategicDiagram,
    UnscoredPaper,
)


def to_csv(header: Iterable[str], rows: Iterable[Iterable[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def frequency_csv(table: FrequencyTable, key_header: str) -> str:
    """Columns: <key_header>, papers, percent (one decimal)."""
    return to_csv(
        [key_header, "papers", "percent"],
        ([e.key, e.count, percent(e.percent_of_total)] for e in table.entries),
    )


def authorship_csv(summary: AuthorshipSummary) -> str:
    rows = [
        ("papers", summary.papers),
        ("distinct_authors", summary.distinct_authors),
        ("mean_authors_per_paper", round_half_up(summary.mean_authors_per_paper, 1)),
        ("modal_authors_per_paper", summary.modal_authors_per_paper),
        ("single_author_percent", percent(summary.single_author_fraction)),
        ("max_authors", summary.max_authors),
        ("most_prolific_author", summary.most_prolific_author or ""),
        ("most_prolific_papers", summary.most_prolific_count),
        ("records_without_authors", len(summary.excluded_records)),
    ]
    return to_csv(["metric", "value"], rows)


def author_count_csv(summary: AuthorshipSummary) -> str:
    entries = sorted(summary.author_count_distribution.entries, key=lambda e: int(e.key))
    return to_csv(
        ["authors", "papers", "percent"],
        ([e.key, e.count, percent(e.percent_of_total)] for e in entries),
    )


def cooperation_csv(result: CooperationResult) -> str:
    rows = [
        ("home_country", result.home_country),
        ("papers", result.table.total),
        ("international_papers", result.international_papers),
        ("international_percent", percent(result.international_fraction)),
        ("countries_involved", result.countries_involved),
    ]
    return to_csv(["metric", "value"], rows)


def scores_csv(scores: list[PriScore]) -> str:
    return to_csv(
        ["paper_id", "journal", "year", "N", "R", "PRI"],
        (
            [s.paper_id, s.journal, s.year, s.N, round_half_up(s.R, 2), round_half_up(s.pri, 2)]
            for s in scores
        ),
    )


def unscored_csv(unscored: list[UnscoredPaper]) -> str:
    return to_csv(
        ["paper_id", "journal", "year", "times_cited", "reason"],
        ([u.paper_id, u.journal, u.year, u.times_cited, u.reason] for u in unscored),
    )


def range_label(row: PriRange) -> str:
    operator = "=" if row.exact else ">="
    return f"PRI {operator} {trimmed(row.threshold, 2)}"


def pri_ranges_csv(rows: list[PriRange]) -> str:
    return to_csv(
        ["range", "papers", "percent"],
        ([range_label(r), r.count, percent(r.percent_of_total)] for r in rows),
    )


def pri_overview_csv(overview: PriOverview) -> str:
    rows = [
        ("scored_papers", overview.scored),
        ("mean_pri", round_half_up(overview.mean_pri, 2)),
        ("median_peer_set_size", overview.median_peer_set_size),
        ("global_average_pri", round_half_up(overview.global_average_pri, 2)),
        ("papers_at_or_above_global_average", overview.above_global_average),
        ("percent_at_or_above_global_average", percent(overview.above_global_fraction)),
    ]
    return to_csv(["metric", "value"], rows)


def _cosine(value: float) -> str:
    return round_half_up(Fraction(value), 4)


def keywords_csv(graph: CooccurrenceGraph) -> str:
    ordered = sorted(graph.frequencies().items(), key=lambda item: (-item[1], item[0]))
    return to_csv(["term", "frequency"], ordered)


def edges_csv(graph: CooccurrenceGraph) -> str:
    return to_csv(
        ["term_a", "term_b", "co_count", "cosine"],
        ([l.term_a, l.term_b, l.co_count, _cosine(l.cosine)] for l in graph.links()),
    )


def clusters_csv(cluster_set: ClusterSet) -> str:
    return to_csv(
        ["cluster_number", "label", "density", "centrality", "terms"],
        (
            [c.number, c.label, _cosine(c.density), _cosine(c.centrality), ";".join(c.ordered_terms())]
            for c in cluster_set.clusters
        ),
    )


def category_keywords_csv(tables: dict[str, FrequencyTable]) -> str:
    rows = []
    for category, table in tables.items():
        for rank, entry in enumerate(table.entries, start=1):
            rows.append([category, table.total, rank, entry.key, entry.count])
    return to_csv(["category", "category_papers", "rank", "keyword", "papers"], rows)


def emit_quadrant_tables(diagram: StrategicDiagram, cluster_set: ClusterSet) -> dict[Quadrant, str]:
    """One CSV per quadrant; the label is listed first and repeated as `*label*`."""
    by_number = {c.number: c for c in cluster_set.clusters}
    if set(by_number) != {p.cluster_number for p in diagram.points}:
        raise ValueError("Strategic diagram and cluster set describe different clusters")

    tables: dict[Quadrant, str] = {}
    for quadrant in QUADRANTS:
        clusters = [by_number[n] for n in diagram.in_quadrant(quadrant)]
        tables[quadrant] = to_csv(
            ["cluster_number", "label", "label_marked", "terms"],
            ([c.number, c.label, f"*{c.label}*", ";".join(c.ordered_terms())] for c in clusters),
        )
    return tables
