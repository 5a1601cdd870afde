"""Co-word analysis stage."""

from dataclasses import dataclass

from biblioscope.cli.pipeline import ui
from biblioscope.cli.pipeline.context import RunContext
from biblioscope.core.coword.cluster import cluster_graph
from biblioscope.core.coword.graph import CooccurrenceGraph, build_graph, category_keywords
from biblioscope.core.report.tables import (
    category_keywords_csv,
    clusters_csv,
    edges_csv,
    keywords_csv,
)
from biblioscope.core.shapes import ClusterSet, FrequencyTable


@dataclass
class CowordResult:
    graph: CooccurrenceGraph
    clusters: ClusterSet
    category_keywords: dict[str, FrequencyTable]


def compute_coword(ctx: RunContext) -> CowordResult:
    def compute() -> CowordResult:
        config = ctx.config
        articles = ctx.articles()
        graph = build_graph(articles, config.min_freq, config.max_concurrent)
        clusters = cluster_graph(
            graph,
            min_cosine=config.min_cos,
            min_size=config.min_size,
            max_size=config.max_size,
            density_mode=config.density_mode,
        )
        categories = category_keywords(
            articles,
            top_k_categories=config.top_categories,
            stoplist=ctx.stoplist(),
            top_terms=config.top_terms,
        )
        return CowordResult(graph, clusters, categories)

    return ctx.memo("coword", compute)


def coword_command(ctx: RunContext) -> None:
    with ctx.stage("coword", min_freq=ctx.config.min_freq, min_cos=ctx.config.min_cos):
        result = compute_coword(ctx)
        ctx.write_all(
            {
                "keywords.csv": keywords_csv(result.graph),
                "edges.csv": edges_csv(result.graph),
                "clusters.csv": clusters_csv(result.clusters),
                "category_keywords.csv": category_keywords_csv(result.category_keywords),
            }
        )

    ui.console.print(
        f"Keywords: {result.graph.distinct_before} distinct, "
        f"{result.graph.distinct_after} with frequency >= {ctx.config.min_freq}"
    )
    ui.print_clusters(result.clusters)
