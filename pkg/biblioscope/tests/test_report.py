import random
import statistics
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from biblioscope.core.coword.cluster import cluster_graph
from biblioscope.core.coword.graph import build_graph
from biblioscope.core.formatting import percent, round_half_up, trimmed
from biblioscope.core.load.parse import filter_research_articles
from biblioscope.core.pri.rank import default_thresholds, pri_range_summary
from biblioscope.core.pri.score import score_corpus
from biblioscope.core.report.figures import (
    EmptyClusterSet,
    EmptyScores,
    EmptyTable,
    build_strategic_diagram,
    emit_pri_scatter,
    emit_strategic_diagram,
    emit_yearly_bars,
    quadrant_of,
)
from biblioscope.core.report.svg import SVG_NS
from biblioscope.core.report.tables import (
    emit_quadrant_tables,
    frequency_csv,
    pri_ranges_csv,
    range_label,
    scores_csv,
)
from biblioscope.core.shapes import QUADRANTS, Cluster, ClusterSet, FrequencyTable, PriRange, PriScore, RenderConfig
from biblioscope.core.stats import cooperation_table, doc_type_distribution, field_distribution


def _parse(svg: str) -> ET.Element:
    return ET.fromstring(svg.encode("utf-8"))


def _by_class(root: ET.Element, tag: str, css_class: str) -> list[ET.Element]:
    return [e for e in root.iter(f"{{{SVG_NS}}}{tag}") if e.get("class") == css_class]


def _score(paper_id: str, year: int, value: Fraction | int) -> PriScore:
    value = Fraction(value)
    return PriScore(paper_id=paper_id, year=year, N=100, R=101 - value, pri=value)


def _cluster(number: int, centrality: float, density: float) -> Cluster:
    terms = tuple(f"c{number}-{i}" for i in range(3))
    return Cluster(number=number, terms=terms, centrality=centrality, density=density, label=terms[0])


def test_round_half_up():
    assert round_half_up(Fraction(1, 8), 2) == "0.13"
    assert round_half_up(Fraction(151, 3), 2) == "50.33"
    assert round_half_up(Fraction(-5, 2), 0) == "-3"
    assert round_half_up(7, 1) == "7.0"
    assert trimmed(Fraction(125, 2)) == "62.5"
    assert trimmed(99) == "99"
    assert percent(Fraction(2, 3)) == "66.7"


def test_yearly_bars_heights():
    table = FrequencyTable.from_counts({"2005": 3, "2006": 1}, 4)

    root = _parse(emit_yearly_bars(table))

    bars = _by_class(root, "rect", "bar")
    assert len(bars) == 2
    heights = [float(b.get("height")) for b in bars]
    assert heights[0] == pytest.approx(3 * heights[1], abs=0.05)


def test_yearly_bars_are_chronological():
    table = FrequencyTable.from_counts({"2010": 5, "2001": 1, "2005": 2}, 8)

    root = _parse(emit_yearly_bars(table))

    assert [t.text for t in _by_class(root, "text", "year-label")] == ["2001", "2005", "2010"]


def test_yearly_bars_single_year_and_caption():
    render = RenderConfig(yearly_caption="Output per year")

    root = _parse(emit_yearly_bars(FrequencyTable.from_counts({"2005": 2}, 2), render))

    assert len(_by_class(root, "rect", "bar")) == 1
    assert _by_class(root, "text", "caption")[0].text == "Output per year"


def test_yearly_bars_empty():
    with pytest.raises(EmptyTable):
        emit_yearly_bars(FrequencyTable(total=0))


def test_pri_scatter_one_point():
    root = _parse(emit_pri_scatter([_score("a", 2005, 100)], Fraction(151, 3)))

    assert len(_by_class(root, "circle", "point")) == 1
    assert len(_by_class(root, "line", "global-mean")) == 1
    assert len(_by_class(root, "line", "median-index")) == 1


def test_pri_scatter_global_mean_position():
    render = RenderConfig()

    root = _parse(emit_pri_scatter([_score("a", 2005, 50)], Fraction(151, 3), render))

    line = _by_class(root, "line", "global-mean")[0]
    bottom = render.height - render.margin_bottom
    expected = bottom - (151 / 3) / 100 * (bottom - render.margin_top)
    assert float(line.get("y1")) == pytest.approx(expected, abs=0.01)
    assert line.get("stroke-dasharray") == render.dash_pattern


def test_pri_scatter_orders_points_by_year():
    scores = [_score("a", 2010, 100), _score("b", 2005, 25)]

    root = _parse(emit_pri_scatter(scores, 50))

    points = _by_class(root, "circle", "point")
    xs = [float(p.get("cx")) for p in points]
    ys = [float(p.get("cy")) for p in points]
    assert xs == sorted(xs)
    assert ys[0] > ys[1]


def test_pri_scatter_empty():
    with pytest.raises(EmptyScores):
        emit_pri_scatter([], 50)


def test_svg_output_is_deterministic():
    scores = [_score(f"p{i}", 2000 + i % 7, 10 + i) for i in range(30)]
    assert emit_pri_scatter(scores, 62.5) == emit_pri_scatter(list(reversed(scores)), 62.5)


def test_quadrants_one_cluster_each():
    clusters = ClusterSet(
        clusters=(_cluster(1, 1, 1), _cluster(2, 1, 3), _cluster(3, 3, 1), _cluster(4, 3, 3))
    )

    diagram = build_strategic_diagram(clusters)

    assert (diagram.median_centrality, diagram.median_density) == (2, 2)
    assert {q: diagram.in_quadrant(q) for q in QUADRANTS} == {
        "lower_left": [1],
        "upper_left": [2],
        "lower_right": [3],
        "upper_right": [4],
    }


def test_single_cluster_sits_on_both_medians():
    diagram = build_strategic_diagram(ClusterSet(clusters=(_cluster(1, 0.3, 0.5),)))

    assert diagram.median_centrality == 0.3
    assert diagram.median_density == 0.5
    assert diagram.points[0].quadrant == "upper_right"


def test_quadrant_boundaries_are_inclusive():
    assert quadrant_of(2, 2, 2, 2) == "upper_right"
    assert quadrant_of(1.99, 2, 2, 2) == "upper_left"
    assert quadrant_of(2, 1.99, 2, 2) == "lower_right"


def test_strategic_diagram_svg():
    clusters = ClusterSet(
        clusters=(_cluster(1, 0.1, 0.2), _cluster(2, 0.4, 0.9), _cluster(3, 0.2, 0.5))
    )

    diagram, svg = emit_strategic_diagram(clusters)

    root = _parse(svg)
    labels = _by_class(root, "text", "cluster-label")
    assert [t.text for t in labels] == ["1", "2", "3"]
    assert len(_by_class(root, "line", "median-centrality")) == 1
    assert len(_by_class(root, "line", "median-density")) == 1
    assert len(diagram.points) == 3


def test_strategic_diagram_empty():
    with pytest.raises(EmptyClusterSet):
        emit_strategic_diagram(ClusterSet())


def test_quadrant_tables_partition_random_cluster_sets():
    rng = random.Random(9)
    for _ in range(100):
        count = rng.randint(1, 15)
        clusters = ClusterSet(
            clusters=tuple(
                _cluster(i, round(rng.random(), 2), round(rng.random(), 2)) for i in range(1, count + 1)
            )
        )

        diagram = build_strategic_diagram(clusters)
        tables = emit_quadrant_tables(diagram, clusters)

        mc = statistics.median(c.centrality for c in clusters.clusters)
        md = statistics.median(c.density for c in clusters.clusters)
        listed = []
        for quadrant, text in tables.items():
            numbers = [int(line.split(",")[0]) for line in text.splitlines()[1:]]
            listed.extend(numbers)
            for number in numbers:
                cluster = clusters.clusters[number - 1]
                vertical = "upper" if cluster.density >= md else "lower"
                horizontal = "right" if cluster.centrality >= mc else "left"
                assert quadrant == f"{vertical}_{horizontal}"
        assert sorted(listed) == list(range(1, count + 1))


def test_quadrant_table_lists_label_first():
    cluster = Cluster(number=1, terms=("a", "b", "hub"), label="hub")
    clusters = ClusterSet(clusters=(cluster,))

    tables = emit_quadrant_tables(build_strategic_diagram(clusters), clusters)

    assert tables["upper_right"] == "cluster_number,label,label_marked,terms\n1,hub,*hub*,hub;a;b\n"
    assert tables["lower_left"] == "cluster_number,label,label_marked,terms\n"


def test_quadrant_tables_reject_mismatched_diagram():
    clusters = ClusterSet(clusters=(_cluster(1, 0.1, 0.1), _cluster(2, 0.2, 0.2)))
    other = ClusterSet(clusters=(_cluster(1, 0.1, 0.1),))
    with pytest.raises(ValueError):
        emit_quadrant_tables(build_strategic_diagram(other), clusters)


def test_range_label():
    exact = PriRange(threshold=100, exact=True, count=1, percent_of_total=Fraction(1, 2))
    cumulative = PriRange(threshold=Fraction(151, 3), count=1, percent_of_total=Fraction(1, 2))
    assert range_label(exact) == "PRI = 100"
    assert range_label(cumulative) == "PRI >= 50.33"


def test_scores_csv_rounds_for_display():
    score = PriScore(paper_id="x", journal="J", year=2005, N=3, R=Fraction(5, 2), pri=Fraction(100, 2))
    assert scores_csv([score]) == "paper_id,journal,year,N,R,PRI\nx,J,2005,3,2.50,50.00\n"


def test_frequency_csv_quotes_commas():
    table = FrequencyTable.from_counts({"GEOGRAPHY, PHYSICAL": 1}, 4)
    assert frequency_csv(table, "category") == 'category,papers,percent\n"GEOGRAPHY, PHYSICAL",1,25.0\n'


def test_fixture_golden_tables(corpus, articles, peer_sets, golden_dir):
    def golden(name: str) -> str:
        return (golden_dir / name).read_text()

    assert frequency_csv(doc_type_distribution(corpus), "doc_type") == golden("doc_types.csv")
    assert frequency_csv(cooperation_table(articles, "NORWAY").table, "country") == golden("countries.csv")
    assert frequency_csv(field_distribution(articles, "journal"), "journal") == golden("journals.csv")
    assert frequency_csv(field_distribution(articles, "category"), "category") == golden("categories.csv")

    scores = score_corpus(filter_research_articles(corpus, 1994, 2012), peer_sets).scores
    ranges = pri_range_summary(scores, default_thresholds(Fraction(125, 2)), exact_top=True)
    assert pri_ranges_csv(ranges) == golden("pri_ranges.csv")


def test_fixture_quadrant_tables(articles, golden_dir):
    clusters = cluster_graph(build_graph(articles, 4))

    diagram, _ = emit_strategic_diagram(clusters)

    assert diagram.median_centrality == pytest.approx(0.25)
    assert diagram.median_density == pytest.approx(0.6875)
    for quadrant, text in emit_quadrant_tables(diagram, clusters).items():
        assert text == (golden_dir / f"quadrant_{quadrant}.csv").read_text()
