"""Keyword extraction and the co-occurrence graph.

Frequencies and co-occurrence counts are taken over per-record keyword sets:
a keyword counts at most once per record, whichever field it came from.
"""

import asyncio
import math
import string
from collections import Counter
from fractions import Fraction
from itertools import combinations

import networkx as nx

from biblioscope.core.load.parse import collapse
from biblioscope.core.shapes import BiblioRecord, Corpus, FrequencyTable, Link
from biblioscope.core.stats import EmptyCorpus, field_distribution

_PUNCTUATION = string.punctuation + " "


def normalize_term(term: str) -> str:
    return collapse(term).lower().strip(_PUNCTUATION)


def extract_keywords(record: BiblioRecord) -> frozenset[str]:
    """Union of author keywords (DE) and keywords plus (ID), normalized."""
    terms = (normalize_term(t) for t in (*record.author_keywords, *record.keywords_plus))
    return frozenset(t for t in terms if t)


def cosine(co_count: int, freq_a: int, freq_b: int) -> float:
    """co / sqrt(freq_a * freq_b), clamped to 1."""
    return min(1.0, co_count / math.sqrt(freq_a * freq_b))


def cosine_squared(co_count: int, freq_a: int, freq_b: int) -> Fraction:
    """co^2 / (freq_a * freq_b) as an exact fraction, clamped to 1."""
    return min(Fraction(1), Fraction(co_count * co_count, freq_a * freq_b))


class CooccurrenceGraph:
    """Keywords as nodes (with `frequency`), co-occurrences as edges (with `co_count`, `cosine`, `cosine_squared`)."""

    def __init__(self, graph: nx.Graph, min_frequency: int = 1, distinct_before: int | None = None):
        self.graph = graph
        self.min_frequency = min_frequency
        self.distinct_before = graph.number_of_nodes() if distinct_before is None else distinct_before

    @classmethod
    def from_counts(
        cls,
        frequencies: dict[str, int],
        co_counts: dict[tuple[str, str], int],
        min_frequency: int = 1,
        distinct_before: int | None = None,
    ) -> "CooccurrenceGraph":
        graph = nx.Graph()
        for term in sorted(frequencies):
            graph.add_node(term, frequency=frequencies[term])

        for (a, b), co in sorted(co_counts.items()):
            if a == b:
                raise ValueError(f"Self-link on '{a}'")
            if a not in frequencies or b not in frequencies:
                raise ValueError(f"Link ({a}, {b}) refers to an unknown term")
            if co > min(frequencies[a], frequencies[b]):
                raise ValueError(f"Link ({a}, {b}) co-occurs more often than its terms")
            graph.add_edge(
                a,
                b,
                co_count=co,
                cosine=cosine(co, frequencies[a], frequencies[b]),
                cosine_squared=cosine_squared(co, frequencies[a], frequencies[b]),
            )

        return cls(graph, min_frequency, distinct_before)

    @property
    def distinct_after(self) -> int:
        return self.graph.number_of_nodes()

    def terms(self) -> list[str]:
        return sorted(self.graph.nodes)

    def frequency(self, term: str) -> int:
        return self.graph.nodes[term]["frequency"]

    def frequencies(self) -> dict[str, int]:
        return {term: self.frequency(term) for term in self.terms()}

    def cosine(self, a: str, b: str) -> float:
        data = self.graph.get_edge_data(a, b)
        return data["cosine"] if data else 0.0

    def link(self, a: str, b: str) -> Link:
        a, b = sorted((a, b))
        data = self.graph.edges[a, b]
        return Link(
            term_a=a,
            term_b=b,
            co_count=data["co_count"],
            cosine=data["cosine"],
            cosine_squared=data.get("cosine_squared"),
        )

    def links(self, min_cosine: float = 0.0) -> list[Link]:
        """All links with cosine >= min_cosine, ordered by (term_a, term_b)."""
        threshold = Fraction(repr(float(max(min_cosine, 0.0)))) ** 2
        found = [self.link(a, b) for a, b in self.graph.edges]
        return sorted(
            (link for link in found if link.cosine_squared >= threshold),
            key=lambda link: (link.term_a, link.term_b),
        )

    def __len__(self) -> int:
        return self.graph.number_of_nodes()


def _chunks(items: list, count: int) -> list[list]:
    count = max(1, min(count, len(items)))
    size = math.ceil(len(items) / count)
    return [items[i : i + size] for i in range(0, len(items), size)]


def _count_terms(keyword_sets: list[frozenset[str]]) -> Counter[str]:
    counts: Counter[str] = Counter()
    for terms in keyword_sets:
        counts.update(terms)
    return counts


def _count_pairs(keyword_sets: list[frozenset[str]], kept: frozenset[str]) -> Counter[tuple[str, str]]:
    counts: Counter[tuple[str, str]] = Counter()
    for terms in keyword_sets:
        counts.update(combinations(sorted(terms & kept), 2))
    return counts


async def _merged_counts(func, chunks: list[list], *args, max_concurrent: int) -> Counter:
    semaphore = asyncio.Semaphore(max_concurrent)

    async def run(chunk: list) -> Counter:
        async with semaphore:
            return await asyncio.to_thread(func, chunk, *args)

    merged: Counter = Counter()
    for partial in await asyncio.gather(*(run(chunk) for chunk in chunks)):
        merged.update(partial)
    return merged


async def build_graph_async(
    corpus: Corpus,
    min_frequency: int = 4,
    max_concurrent: int = 4,
) -> CooccurrenceGraph:
    """Count keywords and pairs over record chunks, prune rare terms and link the rest."""
    if min_frequency < 1:
        raise ValueError(f"min_frequency must be at least 1, got {min_frequency}")
    if len(corpus) == 0:
        raise EmptyCorpus("Cannot build a co-occurrence graph from an empty corpus")

    keyword_sets = [extract_keywords(record) for record in corpus.records]
    chunks = _chunks(keyword_sets, max_concurrent)

    frequencies = await _merged_counts(_count_terms, chunks, max_concurrent=max_concurrent)
    kept = frozenset(term for term, freq in frequencies.items() if freq >= min_frequency)
    co_counts = await _merged_counts(_count_pairs, chunks, kept, max_concurrent=max_concurrent)

    return CooccurrenceGraph.from_counts(
        {term: frequencies[term] for term in kept},
        dict(co_counts),
        min_frequency=min_frequency,
        distinct_before=len(frequencies),
    )


def build_graph(corpus: Corpus, min_frequency: int = 4, max_concurrent: int = 4) -> CooccurrenceGraph:
    return asyncio.run(build_graph_async(corpus, min_frequency, max_concurrent))


def category_keywords(
    corpus: Corpus,
    top_k_categories: int = 10,
    stoplist: set[str] | frozenset[str] = frozenset(),
    top_terms: int | None = 12,
) -> dict[str, FrequencyTable]:
    """Keyword frequencies per subject category, for the most populated categories.

    A record's keywords count toward each of its categories. Tables are keyed
    by category in descending paper-count order; each table's total is the
    number of papers in the category.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("Cannot compute category keywords of an empty corpus")

    stop = {normalize_term(t) for t in stoplist}
    ranked = field_distribution(corpus, "category").top(top_k_categories)

    tables: dict[str, FrequencyTable] = {}
    for entry in ranked.entries:
        counts: Counter[str] = Counter()
        for record in corpus.records:
            if entry.key in record.categories:
                counts.update(extract_keywords(record) - stop)
        tables[entry.key] = FrequencyTable.from_counts(counts, entry.count).top(top_terms)
    return tables
