"""Scoring target papers against their journal-year peer sets."""

import asyncio
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from biblioscope.core.pri.rank import (
    EmptyList,
    PriError,
    global_average_pri,
    median_size,
    pri,
    rank_of,
)
from biblioscope.core.shapes import (
    BiblioRecord,
    Corpus,
    PeerSet,
    PriOverview,
    PriScore,
    UnscoredPaper,
)

logger = logging.getLogger(__name__)

NO_PEER_SET = "no peer set for journal-year"
NOT_IN_PEER_SET = "citation count not found in peer set"


class TargetNotInPeerSet(PriError):
    """The target's citation count is not a member of its peer set."""


def score_paper(
    target_count: int,
    peer_set: PeerSet,
    paper_id: str,
) -> PriScore:
    if target_count not in peer_set.citation_counts:
        raise TargetNotInPeerSet(
            f"Paper {paper_id}: citation count {target_count} not in peer set "
            f"{peer_set.journal} {peer_set.year} (N={peer_set.N})"
        )
    R = rank_of(target_count, peer_set.citation_counts)
    return PriScore(
        paper_id=paper_id,
        journal=peer_set.journal,
        year=peer_set.year,
        N=peer_set.N,
        R=R,
        pri=pri(peer_set.N, R),
    )


@dataclass
class ScoringResult:
    scores: list[PriScore] = field(default_factory=list)
    unscored: list[UnscoredPaper] = field(default_factory=list)


def _unscored(record: BiblioRecord, reason: str) -> UnscoredPaper:
    return UnscoredPaper(
        paper_id=record.id,
        journal=record.journal,
        year=record.year,
        times_cited=record.times_cited,
        reason=reason,
    )


def _score_group(targets: list[BiblioRecord], peer_set: PeerSet) -> ScoringResult:
    result = ScoringResult()
    for record in targets:
        try:
            result.scores.append(score_paper(record.times_cited, peer_set, record.id))
        except TargetNotInPeerSet as e:
            logger.warning(str(e))
            result.unscored.append(_unscored(record, NOT_IN_PEER_SET))
    return result


async def score_corpus_async(
    targets: Corpus,
    peer_sets: dict[tuple[str, int], PeerSet],
    max_concurrent: int = 4,
) -> ScoringResult:
    """Score every target; results are ordered by paper id regardless of scheduling."""
    groups: dict[tuple[str, int], list[BiblioRecord]] = defaultdict(list)
    result = ScoringResult()

    for record in targets.records:
        key = (record.journal, record.year)
        if key in peer_sets:
            groups[key].append(record)
        else:
            logger.warning(f"Paper {record.id}: no peer set for {record.journal or '<no journal>'} {record.year}")
            result.unscored.append(_unscored(record, NO_PEER_SET))

    semaphore = asyncio.Semaphore(max_concurrent)

    async def run(key: tuple[str, int]) -> ScoringResult:
        async with semaphore:
            return await asyncio.to_thread(_score_group, groups[key], peer_sets[key])

    for partial in await asyncio.gather(*(run(key) for key in sorted(groups))):
        result.scores.extend(partial.scores)
        result.unscored.extend(partial.unscored)

    result.scores.sort(key=lambda s: s.paper_id)
    result.unscored.sort(key=lambda u: u.paper_id)
    return result


def score_corpus(
    targets: Corpus,
    peer_sets: dict[tuple[str, int], PeerSet],
    max_concurrent: int = 4,
) -> ScoringResult:
    return asyncio.run(score_corpus_async(targets, peer_sets, max_concurrent))


def pri_overview(scores: list[PriScore]) -> PriOverview:
    """Mean PRI, expected global mean and the share of papers at or above it."""
    if not scores:
        raise EmptyList("No scored papers")
    sizes = [s.N for s in scores]
    expected = global_average_pri(sizes)
    above = sum(1 for s in scores if s.pri >= expected)
    return PriOverview(
        scored=len(scores),
        mean_pri=sum((s.pri for s in scores), Fraction(0)) / len(scores),
        global_average_pri=expected,
        median_peer_set_size=median_size(sizes),
        above_global_average=above,
        above_global_fraction=Fraction(above, len(scores)),
    )
