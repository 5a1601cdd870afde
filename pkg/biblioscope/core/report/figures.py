"""SVG figures: yearly output bars, PRI scatter and the strategic diagram."""

import statistics
from fractions import Fraction

from biblioscope.core.formatting import trimmed
from biblioscope.core.report.svg import Plot, SvgDocument
from biblioscope.core.shapes import (
    ClusterSet,
    DiagramPoint,
    FrequencyTable,
    PriScore,
    Quadrant,
    RenderConfig,
    StrategicDiagram,
)


class ReportError(Exception):
    """Exception raised when a report cannot be rendered."""


class EmptyTable(ReportError):
    pass


class EmptyScores(ReportError):
    pass


class EmptyClusterSet(ReportError):
    pass


def emit_yearly_bars(yearly_counts: FrequencyTable, render: RenderConfig | None = None) -> str:
    """One bar per year present, in chronological order, heights proportional to counts."""
    if not yearly_counts.entries:
        raise EmptyTable("Yearly output table is empty")
    render = render or RenderConfig()

    entries = sorted(yearly_counts.entries, key=lambda e: int(e.key))
    peak = max(e.count for e in entries)
    plot = Plot(render, x_min=0, x_max=len(entries), y_min=0, y_max=peak)

    doc = SvgDocument(render, render.yearly_caption)
    doc.caption(render.yearly_caption)
    doc.axes(plot)

    ticks = doc.group("y-ticks")
    for value in (0, peak):
        doc.text(ticks, plot.left - 6, plot.y(value) + 4, str(value), text_anchor="end")

    slot = (plot.right - plot.left) / len(entries)
    bars = doc.group("bars")
    labels = doc.group("year-labels")
    for index, entry in enumerate(entries):
        x = plot.x(index) + slot * 0.1
        top = plot.y(entry.count)
        doc.rect(bars, x, top, slot * 0.8, plot.bottom - top, class_="bar", fill=render.bar_color)
        doc.text(
            labels,
            plot.x(index + 0.5),
            plot.bottom + 16,
            entry.key,
            class_="year-label",
            text_anchor="middle",
        )
    return doc.to_string()


def chronological_scores(scores: list[PriScore]) -> list[PriScore]:
    return sorted(scores, key=lambda s: (s.year if s.year is not None else 0, s.paper_id))


def emit_pri_scatter(
    scores: list[PriScore],
    global_mean: Fraction | float,
    render: RenderConfig | None = None,
) -> str:
    """PRI against paper index in chronological order, with dashed global-mean and median-index lines."""
    if not scores:
        raise EmptyScores("No PRI scores to plot")
    render = render or RenderConfig()

    ordered = chronological_scores(scores)
    n = len(ordered)
    plot = Plot(render, x_min=0, x_max=n + 1, y_min=0, y_max=100)

    doc = SvgDocument(render, render.pri_caption)
    doc.caption(render.pri_caption)
    doc.axes(plot)

    ticks = doc.group("y-ticks")
    for value in (0, 25, 50, 75, 100):
        doc.text(ticks, plot.left - 6, plot.y(value) + 4, str(value), text_anchor="end")

    points = doc.group("points")
    for index, score in enumerate(ordered, start=1):
        doc.circle(
            points,
            plot.x(index),
            plot.y(float(score.pri)),
            render.point_radius,
            class_="point",
            fill=render.point_color,
        )

    doc.dashed("global-mean", plot.left, plot.y(float(global_mean)), plot.right, plot.y(float(global_mean)))
    median_index = (n + 1) / 2
    doc.dashed("median-index", plot.x(median_index), plot.top, plot.x(median_index), plot.bottom)
    doc.text(
        doc.root,
        plot.right,
        plot.y(float(global_mean)) - 4,
        f"PRI {trimmed(global_mean, 2)}",
        class_="global-mean-label",
        text_anchor="end",
    )
    return doc.to_string()


def quadrant_of(centrality: float, density: float, median_centrality: float, median_density: float) -> Quadrant:
    """At or above a median counts as right (centrality) or upper (density)."""
    horizontal = "right" if centrality >= median_centrality else "left"
    vertical = "upper" if density >= median_density else "lower"
    return f"{vertical}_{horizontal}"  # type: ignore[return-value]


def build_strategic_diagram(cluster_set: ClusterSet) -> StrategicDiagram:
    if not cluster_set.clusters:
        raise EmptyClusterSet("No clusters to place on a strategic diagram")
    median_centrality = statistics.median(c.centrality for c in cluster_set.clusters)
    median_density = statistics.median(c.density for c in cluster_set.clusters)
    return StrategicDiagram(
        points=tuple(
            DiagramPoint(
                cluster_number=c.number,
                centrality=c.centrality,
                density=c.density,
                quadrant=quadrant_of(c.centrality, c.density, median_centrality, median_density),
            )
            for c in cluster_set.clusters
        ),
        median_centrality=median_centrality,
        median_density=median_density,
    )


def emit_strategic_diagram(
    cluster_set: ClusterSet,
    render: RenderConfig | None = None,
) -> tuple[StrategicDiagram, str]:
    """Cluster numbers drawn at (centrality, density), split by dashed median lines."""
    diagram = build_strategic_diagram(cluster_set)
    render = render or RenderConfig()

    x_max = max(p.centrality for p in diagram.points) * 1.1 or 1.0
    y_max = max(p.density for p in diagram.points) * 1.1 or 1.0
    plot = Plot(render, x_min=0, x_max=x_max, y_min=0, y_max=y_max)

    doc = SvgDocument(render, render.diagram_caption)
    doc.caption(render.diagram_caption)
    doc.axes(plot)

    axis_labels = doc.group("axis-labels")
    doc.text(axis_labels, (plot.left + plot.right) / 2, plot.bottom + 30, "Centrality", text_anchor="middle")
    doc.text(
        axis_labels,
        plot.left - 40,
        (plot.top + plot.bottom) / 2,
        "Density",
        text_anchor="middle",
        transform=f"rotate(-90 {plot.left - 40:.2f} {(plot.top + plot.bottom) / 2:.2f})",
    )

    doc.dashed(
        "median-centrality",
        plot.x(diagram.median_centrality),
        plot.top,
        plot.x(diagram.median_centrality),
        plot.bottom,
    )
    doc.dashed(
        "median-density",
        plot.left,
        plot.y(diagram.median_density),
        plot.right,
        plot.y(diagram.median_density),
    )

    labels = doc.group("clusters")
    for point in diagram.points:
        doc.text(
            labels,
            plot.x(point.centrality),
            plot.y(point.density),
            str(point.cluster_number),
            class_="cluster-label",
            text_anchor="middle",
            dominant_baseline="middle",
        )
    return diagram, doc.to_string()
