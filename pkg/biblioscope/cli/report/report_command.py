"""Report stage: every table plus the three figures."""

import logging

from biblioscope.cli.coword.coword_command import compute_coword
from biblioscope.cli.pipeline import ui
from biblioscope.cli.pipeline.context import RunContext
from biblioscope.cli.pri.pri_command import compute_pri
from biblioscope.cli.stats.stats_command import compute_stats, stats_tables
from biblioscope.core.report.figures import (
    emit_pri_scatter,
    emit_strategic_diagram,
    emit_yearly_bars,
)
from biblioscope.core.report.tables import (
    category_keywords_csv,
    emit_quadrant_tables,
    pri_ranges_csv,
)

logger = logging.getLogger(__name__)


def _skip(ctx: RunContext, message: str) -> None:
    logger.warning(message)
    ctx.logger.log_warning("report", message)


def report_command(ctx: RunContext) -> None:
    render = ctx.config.render
    with ctx.stage("report"):
        stats = compute_stats(ctx)
        pri = compute_pri(ctx)
        coword = compute_coword(ctx)

        files = {
            **stats_tables(stats),
            "category_keywords.csv": category_keywords_csv(coword.category_keywords),
            "yearly_output.svg": emit_yearly_bars(stats.yearly, render),
        }

        if pri.overview is not None:
            files["pri_ranges.csv"] = pri_ranges_csv(pri.ranges)
            files["pri_scatter.svg"] = emit_pri_scatter(pri.scores, pri.overview.global_average_pri, render)
        else:
            _skip(ctx, "No scored papers; PRI ranges and scatter plot skipped")

        diagram = None
        if coword.clusters.clusters:
            diagram, svg = emit_strategic_diagram(coword.clusters, render)
            for quadrant, text in emit_quadrant_tables(diagram, coword.clusters).items():
                files[f"quadrant_{quadrant}.csv"] = text
            files["strategic_diagram.svg"] = svg
        else:
            _skip(ctx, "No keyword clusters; strategic diagram and quadrant tables skipped")

        ctx.write_all(files)

    if diagram is not None:
        ui.print_clusters(coword.clusters, diagram)
