"""Greedy size-capped clustering of the co-occurrence graph, with density,
centrality and cluster labels."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from biblioscope.core.coword.graph import CooccurrenceGraph
from biblioscope.core.shapes import Cluster, ClusterSet, DensityMode, Link

logger = logging.getLogger(__name__)


def edge_order(link: Link) -> tuple[Fraction, str, str]:
    """Exact cosine descending, then term pair ascending."""
    return (-link.cosine_squared, link.term_a, link.term_b)


@dataclass
class _Scan:
    """Clusters as they grow during the edge scan."""

    max_size: int
    members: list[list[str]] = field(default_factory=list)
    owner: dict[str, int] = field(default_factory=dict)

    def open(self, a: str, b: str) -> None:
        self.owner[a] = self.owner[b] = len(self.members)
        self.members.append([a, b])

    def join(self, index: int, term: str) -> bool:
        if len(self.members[index]) >= self.max_size:
            return False
        self.members[index].append(term)
        self.owner[term] = index
        return True

    def step(self, link: Link) -> None:
        a, b = link.term_a, link.term_b
        in_a, in_b = self.owner.get(a), self.owner.get(b)
        if in_a is None and in_b is None:
            if self.max_size >= 2:
                self.open(a, b)
        elif in_a is None:
            self.join(in_b, a)
        elif in_b is None:
            self.join(in_a, b)
        # Both clustered: the link is internal or external, classified after the scan


def _mean_or_sum(values: list[float], mode: DensityMode) -> float:
    if not values:
        return 0.0
    total = math.fsum(values)
    return total if mode == "sum" else total / len(values)


def internal_links(terms: list[str] | tuple[str, ...], links: list[Link]) -> list[Link]:
    members = set(terms)
    return [
        link
        for link in links
        if link.term_a in members and link.term_b in members
    ]


def external_links(
    terms: list[str] | tuple[str, ...],
    links: list[Link],
    membership: dict[str, int],
) -> list[Link]:
    """Links from a member to a term of another cluster."""
    members = set(terms)
    found = []
    for link in links:
        a_in, b_in = link.term_a in members, link.term_b in members
        other = link.term_b if a_in else link.term_a
        if a_in != b_in and other in membership:
            found.append(link)
    return found


def density(cluster: Cluster, mode: DensityMode = "mean") -> float:
    """Mean (or sum) cosine of the cluster's internal links."""
    return _mean_or_sum([link.cosine for link in cluster.internal_edges], mode)


def centrality(
    cluster: Cluster,
    graph: CooccurrenceGraph,
    cluster_set: ClusterSet,
    mode: DensityMode | None = None,
) -> float:
    """Mean (or sum) cosine of the cluster's links to other clusters; 0 when isolated."""
    links = graph.links(cluster_set.min_cosine)
    external = external_links(cluster.terms, links, cluster_set.membership())
    return _mean_or_sum([link.cosine for link in external], mode or cluster_set.density_mode)


def label_terms(terms: list[str] | tuple[str, ...], internal: list[Link], graph: CooccurrenceGraph) -> str:
    """Term with the highest (sum of internal link cosines) x frequency; ties go to the smaller term."""
    link_sums = {term: [] for term in terms}
    for link in internal:
        link_sums[link.term_a].append(link.cosine)
        link_sums[link.term_b].append(link.cosine)
    scores = {term: math.fsum(values) * graph.frequency(term) for term, values in link_sums.items()}
    return min(terms, key=lambda term: (-scores[term], term))


def label_cluster(cluster: Cluster, graph: CooccurrenceGraph) -> str:
    return label_terms(cluster.terms, list(cluster.internal_edges), graph)


def cluster_graph(
    graph: CooccurrenceGraph,
    min_cosine: float = 0.2,
    min_size: int = 3,
    max_size: int = 10,
    density_mode: DensityMode = "mean",
) -> ClusterSet:
    """Greedy single-linkage scan over links in descending cosine order.

    An unclustered pair opens a cluster; a link from a cluster with room pulls
    its other term in; links from a full cluster are skipped, leaving the other
    term free to seed a later cluster. Clusters smaller than `min_size` are
    dropped and the survivors numbered in creation order.
    """
    if not 1 <= min_size <= max_size:
        raise ValueError(f"Need 1 <= min_size <= max_size, got {min_size}, {max_size}")

    links = graph.links(min_cosine)
    scan = _Scan(max_size=max_size)
    for link in sorted(links, key=edge_order):
        scan.step(link)

    survivors = [sorted(terms) for terms in scan.members if len(terms) >= min_size]
    dropped = len(scan.members) - len(survivors)
    if dropped:
        logger.info(f"Dropped {dropped} cluster(s) with fewer than {min_size} terms")

    membership = {term: number for number, terms in enumerate(survivors, start=1) for term in terms}

    clusters: list[Cluster] = []
    external_edges: dict[tuple[str, str], Link] = {}
    for number, terms in enumerate(survivors, start=1):
        internal = internal_links(terms, links)
        external = external_links(terms, links, membership)
        for link in external:
            external_edges[(link.term_a, link.term_b)] = link
        clusters.append(
            Cluster(
                number=number,
                terms=tuple(terms),
                internal_edges=tuple(internal),
                density=_mean_or_sum([link.cosine for link in internal], density_mode),
                centrality=_mean_or_sum([link.cosine for link in external], density_mode),
                label=label_terms(terms, internal, graph),
            )
        )

    return ClusterSet(
        clusters=tuple(clusters),
        external_edges=tuple(external_edges[key] for key in sorted(external_edges)),
        min_cosine=min_cosine,
        min_size=min_size,
        max_size=max_size,
        density_mode=density_mode,
    )
