"""Percentile Rank Index stage."""

import logging
from dataclasses import dataclass

from biblioscope.cli.pipeline import ui
from biblioscope.cli.pipeline.context import RunContext
from biblioscope.core.pri.rank import default_thresholds, pri_range_summary
from biblioscope.core.pri.score import pri_overview, score_corpus
from biblioscope.core.report.tables import (
    pri_overview_csv,
    pri_ranges_csv,
    scores_csv,
    unscored_csv,
)
from biblioscope.core.shapes import PriOverview, PriRange, PriScore, UnscoredPaper

logger = logging.getLogger(__name__)

NOTHING_SCORED = "No paper could be scored; PRI overview and ranges skipped"


@dataclass
class PriResult:
    scores: list[PriScore]
    unscored: list[UnscoredPaper]
    # None when no paper has a usable peer set
    overview: PriOverview | None
    ranges: list[PriRange]


def compute_pri(ctx: RunContext) -> PriResult:
    def compute() -> PriResult:
        scoring = score_corpus(ctx.pri_targets(), ctx.peer_sets(), ctx.config.max_concurrent)
        if not scoring.scores:
            return PriResult(scoring.scores, scoring.unscored, None, [])
        overview = pri_overview(scoring.scores)
        ranges = pri_range_summary(
            scoring.scores,
            default_thresholds(overview.global_average_pri),
            exact_top=True,
        )
        return PriResult(scoring.scores, scoring.unscored, overview, ranges)

    return ctx.memo("pri", compute)


def pri_command(ctx: RunContext) -> None:
    with ctx.stage("pri", peer_sources=len(ctx.config.peers)):
        result = compute_pri(ctx)
        files = {
            "scores.csv": scores_csv(result.scores),
            "unscored.csv": unscored_csv(result.unscored),
        }
        if result.overview is not None:
            files["pri_ranges.csv"] = pri_ranges_csv(result.ranges)
            files["pri_overview.csv"] = pri_overview_csv(result.overview)
        else:
            logger.warning(NOTHING_SCORED)
            ctx.logger.log_warning("pri", NOTHING_SCORED)
        ctx.write_all(files)

    if result.overview is not None:
        ui.print_pri(result.overview, result.ranges, len(result.unscored))
    else:
        ui.print_nothing_scored(len(result.unscored))
