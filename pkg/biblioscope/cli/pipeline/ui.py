"""Rich console output for pipeline stages."""

from pathlib import Path

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from biblioscope.core.formatting import percent, round_half_up
from biblioscope.core.report.tables import range_label
from biblioscope.core.shapes import (
    AuthorshipSummary,
    ClusterSet,
    CooperationResult,
    Corpus,
    CorpusOverview,
    FrequencyTable,
    PriOverview,
    PriRange,
    StrategicDiagram,
)

console = Console()
error_console = Console(stderr=True)


def print_error(message: str) -> None:
    error_console.print(f"[red bold]✗ Error:[/red bold] {message}")


def print_parse_summary(corpus: Corpus, articles: Corpus) -> None:
    text = Text()
    text.append(f"Sources: {', '.join(corpus.provenance.sources)}\n", style="dim")
    text.append(f"Records: {len(corpus)}  |  Research articles in window: {len(articles)}\n", style="bold")
    if corpus.provenance.issues:
        text.append(f"Skipped {len(corpus.provenance.issues)} malformed record(s):\n", style="yellow")
        for issue in corpus.provenance.issues:
            text.append(f"  {issue}\n", style="yellow dim")
    else:
        text.append("✓ No malformed records", style="green")
    console.print(Panel(text, title="Parse", border_style="blue"))


def print_overview(overview: CorpusOverview) -> None:
    console.print(
        f"[bold]{overview.records}[/bold] papers, {overview.first_year}-{overview.last_year}: "
        f"{overview.distinct_journals} journals, {overview.distinct_categories} categories, "
        f"{overview.distinct_countries} countries"
    )


def print_frequency(title: str, table: FrequencyTable, key_header: str) -> None:
    rich_table = Table(title=title, show_header=True, header_style="bold cyan")
    rich_table.add_column(key_header, style="bold")
    rich_table.add_column("Papers", justify="right", style="cyan")
    rich_table.add_column(f"% of {table.total}", justify="right", style="dim")
    for entry in table.entries:
        rich_table.add_row(entry.key, str(entry.count), percent(entry.percent_of_total))
    console.print(rich_table)


def print_authorship(summary: AuthorshipSummary) -> None:
    console.print(
        f"Authors: [bold]{summary.distinct_authors}[/bold] distinct, "
        f"{round_half_up(summary.mean_authors_per_paper, 1)} per paper on average, "
        f"modal class {summary.modal_authors_per_paper}, "
        f"{percent(summary.single_author_fraction)}% single-authored, max {summary.max_authors}"
    )


def print_cooperation(result: CooperationResult) -> None:
    console.print(
        f"International papers ({result.home_country} + partner): [bold]{result.international_papers}[/bold] "
        f"({percent(result.international_fraction)}%), {result.countries_involved} countries involved"
    )


def print_pri(overview: PriOverview, ranges: list[PriRange], unscored: int) -> None:
    table = Table(title="PRI ranges", show_header=True, header_style="bold cyan")
    table.add_column("Range", style="bold")
    table.add_column("Papers", justify="right", style="cyan")
    table.add_column(f"% of {overview.scored}", justify="right", style="dim")
    for row in ranges:
        table.add_row(range_label(row), str(row.count), percent(row.percent_of_total))
    console.print(table)
    console.print(
        f"Mean PRI [bold]{round_half_up(overview.mean_pri, 2)}[/bold], "
        f"expected {round_half_up(overview.global_average_pri, 2)} "
        f"(median N = {overview.median_peer_set_size}); unscored papers: {unscored}"
    )


def print_nothing_scored(unscored: int) -> None:
    console.print(f"[yellow]No paper matched a peer set[/yellow]; unscored papers: {unscored}")


def print_clusters(cluster_set: ClusterSet, diagram: StrategicDiagram | None = None) -> None:
    quadrants = {p.cluster_number: p.quadrant for p in diagram.points} if diagram else {}
    table = Table(title="Keyword clusters", show_header=True, header_style="bold cyan")
    table.add_column("#", style="dim", justify="right")
    table.add_column("Label", style="bold")
    table.add_column("Terms", justify="right", style="cyan")
    table.add_column("Density", justify="right")
    table.add_column("Centrality", justify="right")
    if diagram:
        table.add_column("Quadrant", style="dim")
    for c in cluster_set.clusters:
        row = [
            str(c.number),
            c.label,
            str(len(c.terms)),
            f"{c.density:.4f}",
            f"{c.centrality:.4f}",
        ]
        if diagram:
            row.append(quadrants[c.number].replace("_", " "))
        table.add_row(*row)
    console.print(table)
    console.print(f"{len(cluster_set)} clusters holding {cluster_set.clustered_terms} keywords")


def print_run_summary(files: list[Path], log_file: Path, duration_s: float) -> None:
    console.print()
    console.print(f"[green]✓[/green] Wrote {len(files)} file(s) in {duration_s:.1f}s")
    for path in files:
        console.print(f"  {path}", style="dim")
    console.print(f"  Logs: {log_file}", style="dim")
