"""Parse export files and dump the parsed and filtered corpora."""

from biblioscope.cli.pipeline import ui
from biblioscope.cli.pipeline.context import RunContext
from biblioscope.core.load.serialize import dump_corpus


def parse_command(ctx: RunContext) -> None:
    with ctx.stage("parse", sources=len(ctx.config.corpus)):
        corpus = ctx.corpus()
        articles = ctx.articles()

        # Everything is parsed before anything is written
        ctx.write_all(
            {
                "corpus.jsonl": dump_corpus(corpus),
                "corpus_filtered.jsonl": dump_corpus(articles),
            }
        )
    ui.print_parse_summary(corpus, articles)
