import random
from pathlib import Path

import pytest

from biblioscope.core.load.countries import CountryTable, normalize_country
from biblioscope.core.load.load import load_corpus, merge_corpora
from biblioscope.core.load.parse import (
    EmptyInput,
    MalformedRecord,
    filter_research_articles,
    normalize_author,
    parse_export,
)
from biblioscope.core.load.serialize import dump_corpus, serialize_export
from biblioscope.core.shapes import UNRESOLVED, BiblioRecord
from biblioscope.tests.conftest import make_corpus, make_record

SIMPLE_BLOCK = "PT J\nAU Smith, A\nDT Article\nSO POLAR BIOL\nPY 2005\nTC 7\nER\n"


def test_simple_block_maps_fields():
    corpus = parse_export(SIMPLE_BLOCK)

    assert len(corpus) == 1
    record = corpus.records[0]
    assert record.doc_type == "ARTICLE"
    assert record.journal == "POLAR BIOL"
    assert record.year == 2005
    assert record.times_cited == 7
    assert record.authors == ("SMITH, A",)


def test_continuation_joins_with_space_before_splitting():
    text = "PT J\nDE Sea ice; Arctic\n   climate\nPY 2010\nER\nEF\n"

    record = parse_export(text).records[0]

    assert record.author_keywords == ("sea ice", "arctic climate")


def test_header_only_file_is_empty_corpus():
    corpus = parse_export("FN X\nVR 1.0\nEF\n")

    assert len(corpus) == 0
    assert corpus.provenance.issues == ()


def test_empty_input_raises():
    with pytest.raises(EmptyInput):
        parse_export(b"")
    with pytest.raises(EmptyInput):
        parse_export("   \n\n")


def test_missing_tc_parses_as_zero():
    record = parse_export("PT J\nPY 2001\nER\n").records[0]
    assert record.times_cited == 0
    assert record.doc_type == "UNKNOWN"


def test_record_without_id_gets_positional_id():
    corpus = parse_export("PT J\nPY 2001\nER\nPT J\nPY 2002\nER\n", source="a.txt")
    assert [r.id for r in corpus.records] == ["a.txt:1", "a.txt:2"]


def test_block_without_er_is_skipped_when_lenient():
    text = "PT J\nUT X1\nPY 2001\nER\nPT J\nUT X2\nPY 2002\n"

    corpus = parse_export(text, source="cut.txt")

    assert [r.id for r in corpus.records] == ["X1"]
    assert len(corpus.provenance.issues) == 1
    assert corpus.provenance.issues[0].line == 5
    assert "without ER" in corpus.provenance.issues[0].message


def test_block_without_er_aborts_when_strict():
    text = "PT J\nUT X1\nPY 2001\nER\nPT J\nUT X2\nPY 2002\n"

    with pytest.raises(MalformedRecord) as exc_info:
        parse_export(text, source="cut.txt", strict=True)

    assert exc_info.value.line == 5
    assert str(exc_info.value).startswith("cut.txt:5:")


def test_short_tag_line_reports_line_number():
    text = "PT J\nUT X1\nPY 2001\nER\nPT J\nX\nUT X2\nPY 2002\nER\nPT J\nUT X3\nPY 2003\nER\n"

    corpus = parse_export(text)

    assert [r.id for r in corpus.records] == ["X1", "X3"]
    assert corpus.provenance.issues[0].line == 6


def test_missing_year_is_malformed():
    corpus = parse_export("PT J\nUT X1\nER\nPT J\nUT X2\nPY 1999\nER\n")
    assert [r.id for r in corpus.records] == ["X2"]
    assert "PY" in corpus.provenance.issues[0].message


def test_blank_line_inside_record():
    text = "PT J\nUT X1\n\nPY 2001\nER\n"

    assert len(parse_export(text)) == 1
    with pytest.raises(MalformedRecord):
        parse_export(text, strict=True)


def test_duplicate_ids_in_one_file():
    text = "PT J\nUT X1\nPY 2001\nER\nPT J\nUT X1\nPY 2002\nER\n"

    corpus = parse_export(text)
    assert len(corpus) == 1
    assert corpus.records[0].year == 2001

    with pytest.raises(MalformedRecord):
        parse_export(text, strict=True)


def test_author_and_address_lines_are_items():
    text = (
        "PT J\nAU Smith,  A.\n   Berge, J\n"
        "C1 [Smith, A; Berge, J] Univ Ctr Svalbard, Longyearbyen, Norway.\n"
        "   Univ Sheffield, Sheffield S10 2TN, S Yorkshire, England.\n"
        "PY 2005\nER\n"
    )

    record = parse_export(text).records[0]

    assert record.authors == ("SMITH, A", "BERGE, J")
    assert record.addresses == (
        "Univ Ctr Svalbard, Longyearbyen, Norway.",
        "Univ Sheffield, Sheffield S10 2TN, S Yorkshire, England.",
    )
    assert record.countries == ("NORWAY", "UNITED KINGDOM")


def test_record_without_address_is_unresolved():
    record = parse_export("PT J\nPY 2005\nER\n").records[0]
    assert record.countries == (UNRESOLVED,)


def test_latin1_input_is_decoded():
    data = "PT J\nAU Müller, K\nPY 2005\nER\n".encode("latin-1")
    record = parse_export(data).records[0]
    assert record.authors == ("MÜLLER, K",)


def test_utf8_bom_is_ignored():
    data = ("﻿" + SIMPLE_BLOCK).encode("utf-8")
    assert len(parse_export(data)) == 1


@pytest.mark.parametrize(
    "address,country",
    [
        ("Univ Ctr Svalbard, Longyearbyen, Norway", "NORWAY"),
        ("Univ Sheffield, Sheffield S10 2TN, S Yorkshire, England", "UNITED KINGDOM"),
        ("Univ Alaska, Fairbanks, AK 99775 USA", "USA"),
        ("Stanford Univ, Stanford, CA 94305-2004 USA.", "USA"),
        ("Chinese Acad Sci, Beijing 100864, Peoples R China", "CHINA"),
        ("Greenland Inst Nat Resources, Nuuk, Greenland", "DENMARK"),
        ("Univ St Andrews, St Andrews KY16 9AJ, Fife, Scotland", "UNITED KINGDOM"),
        ("[Smith, A] Univ Tromso, Tromso, Norway.", "NORWAY"),
    ],
)
def test_normalize_country(address: str, country: str):
    assert normalize_country(address) == country


def test_unknown_country_is_unresolved(caplog):
    assert normalize_country("Somewhere, Atlantis") == UNRESOLVED
    assert "Unresolved country" in caplog.text


def test_country_table_override(tmp_path: Path):
    override = tmp_path / "countries.txt"
    override.write_text("# local additions\nATLANTIS\nLEMURIA = ATLANTIS\n")

    table = CountryTable.load(override)

    assert normalize_country("Somewhere, Lemuria", table) == "ATLANTIS"
    assert normalize_country("Somewhere, England", table) == "UNITED KINGDOM"


def test_normalize_author():
    assert normalize_author("  smith,   a.b. ") == "SMITH, AB"


def test_filter_research_articles():
    corpus = make_corpus(
        [
            make_record("a", "ARTICLE", 2005),
            make_record("r", "REVIEW", 2005),
            make_record("late", "ARTICLE", 2013),
        ]
    )

    kept = filter_research_articles(corpus, 1994, 2012)

    assert [r.id for r in kept.records] == ["a"]
    assert filter_research_articles(kept, 1994, 2012) == kept


def test_filter_bounds_are_inclusive():
    corpus = make_corpus([make_record("a", "ARTICLE", 1994)])
    assert len(filter_research_articles(corpus, 1994, 1994)) == 1


def test_filter_empty_corpus():
    assert len(filter_research_articles(make_corpus([]), 1994, 2012)) == 0


def test_filter_rejects_inverted_window():
    with pytest.raises(ValueError):
        filter_research_articles(make_corpus([]), 2012, 1994)


def test_fixture_corpus(corpus):
    assert len(corpus) == 30
    by_id = {r.id: r for r in corpus.records}

    a01 = by_id["WOS:A01"]
    assert a01.author_keywords == ("sea ice", "arctic ocean")
    assert a01.keywords_plus == ("fram strait", "sea ice")
    assert a01.countries == ("NORWAY", "UNITED KINGDOM")
    assert a01.categories == ("BIODIVERSITY & CONSERVATION", "ECOLOGY")

    assert by_id["WOS:A02"].author_keywords == ("arctic ocean", "fram strait", "sea ice")
    assert by_id["WOS:A04"].doc_type == "ARTICLE"
    assert by_id["WOS:A04"].authors == ("NILSEN, F", "SMITH, A", "JONES, B")
    assert by_id["WOS:A11"].countries == ("DENMARK", "NORWAY")
    assert by_id["WOS:A15"].countries == ("CHINA", "NORWAY")
    assert by_id["WOS:A24"].times_cited == 0
    assert by_id["WOS:A24"].author_keywords == ()
    assert by_id["WOS:P01"].doc_type == "PROCEEDINGS PAPER"


def test_fixture_filter(corpus):
    articles = filter_research_articles(corpus, 1994, 2014)
    assert len(articles) == 24
    assert all(r.id.startswith("WOS:A") for r in articles.records)


def test_merge_drops_cross_file_duplicates(corpus_path: Path, tmp_path: Path):
    copy = tmp_path / "copy.txt"
    copy.write_bytes(corpus_path.read_bytes())

    merged = load_corpus([corpus_path, copy])

    assert len(merged) == 30
    assert merged.provenance.sources == ("corpus.txt", "copy.txt")
    assert len(merged.provenance.issues) == 30

    with pytest.raises(MalformedRecord):
        load_corpus([corpus_path, copy], strict=True)


def test_merge_keeps_argument_order():
    first = parse_export("PT J\nUT B\nPY 2001\nER\n", source="1.txt")
    second = parse_export("PT J\nUT A\nPY 2001\nER\n", source="2.txt")

    merged = merge_corpora([first, second])

    assert [r.id for r in merged.records] == ["B", "A"]


def test_load_missing_file_raises(tmp_path: Path):
    with pytest.raises(FileNotFoundError):
        load_corpus([tmp_path / "missing.txt"])


def test_round_trip_fixture(corpus):
    reparsed = parse_export(serialize_export(corpus), source="round-trip")
    assert reparsed.records == corpus.records


_WORDS = ["ice", "snow", "polar bear", "fjord", "krill", "glacier", "tundra", "aurora", "moss", "seal"]
_COUNTRIES = [
    "Longyearbyen, Norway",
    "Oban, Scotland",
    "Fairbanks, AK 99775 USA",
    "Kiel, Germany",
    "Nuuk, Greenland",
    "Shanghai, Peoples R China",
]


def _random_record(rng: random.Random, index: int) -> BiblioRecord:
    def words(k: int) -> tuple[str, ...]:
        return tuple(rng.sample(_WORDS, k))

    addresses = tuple(f"Inst {rng.randint(1, 99)}, {c}" for c in rng.sample(_COUNTRIES, rng.randint(0, 3)))
    text = "PT J\n" + "".join(
        [
            f"UT FUZZ:{index:04d}\n",
            *(f"AU {n}\n" for n in [f"Author{rng.randint(1, 50)}, {rng.choice('ABCDE')}" for _ in range(rng.randint(0, 4))]),
            f"DT {rng.choice(['Article', 'Review', 'Proceedings Paper', 'Editorial Material'])}\n",
            f"SO JOURNAL {rng.randint(1, 9)}\n",
            f"PY {rng.randint(1990, 2020)}\n",
            f"TC {rng.randint(0, 500)}\n",
            f"DE {'; '.join(words(rng.randint(1, 4)))}\n" if rng.random() < 0.8 else "",
            f"ID {'; '.join(w.upper() for w in words(rng.randint(1, 3)))}\n" if rng.random() < 0.6 else "",
            f"WC {'; '.join(rng.sample(['Ecology', 'Oceanography', 'Geology'], rng.randint(1, 2)))}\n",
            *(f"C1 {a}\n" for a in addresses),
        ]
    ) + "ER\n"
    return parse_export(text).records[0]


def test_round_trip_fuzz():
    rng = random.Random(20140101)
    corpus = make_corpus([_random_record(rng, i) for i in range(500)])

    reparsed = parse_export(serialize_export(corpus))

    assert reparsed.records == corpus.records


def test_record_count_equals_er_lines(corpus_path: Path, corpus):
    er_lines = sum(1 for line in corpus_path.read_text().splitlines() if line.strip() == "ER")
    assert len(corpus) == er_lines


def test_dump_corpus_is_one_json_object_per_record(corpus):
    lines = dump_corpus(corpus).splitlines()
    assert len(lines) == 30
    assert lines[0].startswith('{"id":"WOS:A01","doc_type":"ARTICLE"')
