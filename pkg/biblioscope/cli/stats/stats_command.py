"""Descriptive statistics stage."""

from dataclasses import dataclass

from biblioscope.cli.pipeline import ui
from biblioscope.cli.pipeline.context import RunContext
from biblioscope.core.report.tables import (
    author_count_csv,
    authorship_csv,
    cooperation_csv,
    frequency_csv,
)
from biblioscope.core.shapes import (
    AuthorshipSummary,
    CooperationResult,
    CorpusOverview,
    FrequencyTable,
)
from biblioscope.core.stats import (
    authorship_summary,
    chronological,
    cooperation_table,
    corpus_overview,
    doc_type_distribution,
    field_distribution,
    yearly_counts,
)

TOP_COUNTRIES = 15
TOP_JOURNALS = 10
TOP_CATEGORIES = 15


@dataclass
class StatsResult:
    overview: CorpusOverview
    doc_types: FrequencyTable
    yearly: FrequencyTable
    authorship: AuthorshipSummary
    cooperation: CooperationResult
    journals: FrequencyTable
    categories: FrequencyTable


def compute_stats(ctx: RunContext) -> StatsResult:
    """Doc types and yearly output cover every record; the rest covers research articles in the window."""

    def compute() -> StatsResult:
        corpus, articles = ctx.corpus(), ctx.articles()
        return StatsResult(
            overview=corpus_overview(articles),
            doc_types=doc_type_distribution(corpus),
            yearly=chronological(yearly_counts(corpus)),
            authorship=authorship_summary(articles),
            cooperation=cooperation_table(articles, ctx.config.home_country),
            journals=field_distribution(articles, "journal"),
            categories=field_distribution(articles, "category"),
        )

    return ctx.memo("stats", compute)


def stats_tables(result: StatsResult) -> dict[str, str]:
    return {
        "doc_types.csv": frequency_csv(result.doc_types, "doc_type"),
        "yearly_counts.csv": frequency_csv(result.yearly, "year"),
        "countries.csv": frequency_csv(result.cooperation.table.top(TOP_COUNTRIES), "country"),
        "journals.csv": frequency_csv(result.journals.top(TOP_JOURNALS), "journal"),
        "categories.csv": frequency_csv(result.categories.top(TOP_CATEGORIES), "category"),
    }


def stats_command(ctx: RunContext) -> None:
    with ctx.stage("stats"):
        result = compute_stats(ctx)
        ctx.write_all(
            {
                **stats_tables(result),
                "authorship.csv": authorship_csv(result.authorship),
                "author_counts.csv": author_count_csv(result.authorship),
                "cooperation.csv": cooperation_csv(result.cooperation),
            }
        )

    ui.print_overview(result.overview)
    ui.print_frequency("Document types", result.doc_types, "Document type")
    ui.print_authorship(result.authorship)
    ui.print_cooperation(result.cooperation)
    ui.print_frequency("Partner countries", result.cooperation.table.top(TOP_COUNTRIES), "Country")
    ui.print_frequency("Journals", result.journals.top(TOP_JOURNALS), "Journal")
    ui.print_frequency("Categories", result.categories.top(TOP_CATEGORIES), "Category")
