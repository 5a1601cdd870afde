"""Tie-averaged citation ranks and the Percentile Rank Index.

All arithmetic is exact (Fraction); callers round for display.
"""

from fractions import Fraction

from biblioscope.core.shapes import PriRange, PriScore


class PriError(Exception):
    """Exception raised when a rank or PRI cannot be computed."""


class EmptyList(PriError):
    """An operation received an empty list."""


class DomainError(PriError):
    """A rank lies outside [1, N]."""


def rank_with_ties(citation_counts: list[int] | tuple[int, ...]) -> list[Fraction]:
    """Rank 1 is the most cited; tied counts share the mean of the positions they span.

    >>> rank_with_ties([10, 5, 5, 2])
    [Fraction(1, 1), Fraction(5, 2), Fraction(5, 2), Fraction(4, 1)]
    """
    if not citation_counts:
        raise EmptyList("Cannot rank an empty citation list")

    ordered = sorted(citation_counts, reverse=True)
    ranks: dict[int, Fraction] = {}
    start = 0
    while start < len(ordered):
        end = start
        while end + 1 < len(ordered) and ordered[end + 1] == ordered[start]:
            end += 1
        # positions start+1 .. end+1 (1-based)
        ranks[ordered[start]] = Fraction(start + end + 2, 2)
        start = end + 1

    return [ranks[count] for count in citation_counts]


def rank_of(target_count: int, citation_counts: list[int] | tuple[int, ...]) -> Fraction:
    """Tie-averaged rank of one count that is a member of `citation_counts`."""
    above = sum(1 for c in citation_counts if c > target_count)
    tied = sum(1 for c in citation_counts if c == target_count)
    return above + Fraction(tied + 1, 2)


def pri(N: int, R: Fraction | int) -> Fraction:
    """(N - R + 1) / N * 100."""
    if N < 1:
        raise DomainError(f"Peer set size must be at least 1, got {N}")
    R = Fraction(R)
    if not 1 <= R <= N:
        raise DomainError(f"Rank {R} outside [1, {N}]")
    return (N - R + 1) * 100 / Fraction(N)


def median_size(peer_set_sizes: list[int]) -> int:
    """Element at position ceil(n/2) of the ascending sizes (lower-middle for even n)."""
    if not peer_set_sizes:
        raise EmptyList("No peer-set sizes given")
    ordered = sorted(peer_set_sizes)
    return ordered[(len(ordered) - 1) // 2]


def global_average_pri(peer_set_sizes: list[int]) -> Fraction:
    """Expected mean PRI, 50 + 50/N, at the median peer-set size."""
    N = median_size(peer_set_sizes)
    if N < 1:
        raise DomainError(f"Peer set size must be at least 1, got {N}")
    return 50 + Fraction(50, N)


def default_thresholds(global_average: Fraction) -> list[Fraction]:
    """>= 99, >= 90, >= 75 and >= the global average, descending and without repeats."""
    values = {Fraction(99), Fraction(90), Fraction(75), Fraction(global_average)}
    return sorted(values, reverse=True)


def pri_range_summary(
    scores: list[PriScore],
    thresholds: list[Fraction],
    exact_top: bool = False,
) -> list[PriRange]:
    """Cumulative counts of scores with PRI >= each threshold.

    With `exact_top`, a leading row counts the papers at exactly PRI = 100.
    """
    thresholds = [Fraction(t) for t in thresholds]
    if any(a < b for a, b in zip(thresholds, thresholds[1:])):
        raise ValueError("Thresholds must be given in descending order")

    total = len(scores)

    def share(count: int) -> Fraction:
        return Fraction(count, total) if total else Fraction(0)

    rows: list[PriRange] = []
    if exact_top:
        top = sum(1 for s in scores if s.pri == 100)
        rows.append(PriRange(threshold=Fraction(100), exact=True, count=top, percent_of_total=share(top)))

    for threshold in thresholds:
        count = sum(1 for s in scores if s.pri >= threshold)
        rows.append(PriRange(threshold=threshold, count=count, percent_of_total=share(count)))
    return rows
