from datetime import datetime, timezone
from pathlib import Path

import pytest

from biblioscope.core.load.load import load_corpus, load_peer_sets
from biblioscope.core.load.parse import filter_research_articles
from biblioscope.core.shapes import BiblioRecord, Corpus, PeerSet, Provenance

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def corpus_path() -> Path:
    """Bundled 30-record export: 24 articles, 3 reviews, 3 proceedings papers."""
    return FIXTURES / "corpus" / "corpus.txt"


@pytest.fixture
def peers_dir() -> Path:
    return FIXTURES / "peers"


@pytest.fixture
def golden_dir() -> Path:
    return FIXTURES / "golden"


@pytest.fixture
def corpus(corpus_path: Path) -> Corpus:
    return load_corpus([corpus_path])


@pytest.fixture
def articles(corpus: Corpus) -> Corpus:
    return filter_research_articles(corpus, 1994, 2014)


@pytest.fixture
def peer_sets(peers_dir: Path) -> dict[tuple[str, int], PeerSet]:
    return load_peer_sets([peers_dir])


def make_record(
    id: str,
    doc_type: str = "ARTICLE",
    year: int = 2005,
    authors: tuple[str, ...] = ("SMITH, A",),
    **fields,
) -> BiblioRecord:
    return BiblioRecord(id=id, doc_type=doc_type, year=year, authors=authors, **fields)


def make_corpus(records: list[BiblioRecord]) -> Corpus:
    return Corpus(
        records=tuple(records),
        provenance=Provenance(sources=("<test>",), parsed_at=datetime.now(timezone.utc)),
    )


@pytest.fixture
def record_factory():
    return make_record


@pytest.fixture
def corpus_factory():
    return make_corpus
