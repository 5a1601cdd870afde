from collections.abc import Mapping
from datetime import datetime
from fractions import Fraction
from typing import Annotated, Literal, TypeAlias

from pydantic import (
    AfterValidator,
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)

UNRESOLVED = "UNRESOLVED"
ARTICLE = "ARTICLE"


def _validate_non_whitespace_only(v: str) -> str:
    if not v.strip():
        raise ValueError("String cannot be only whitespace")
    return v


def _to_fraction(v: object) -> object:
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(repr(v))
    return v


def _sorted_unique(v: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(sorted(set(v)))


NonEmptyStr = Annotated[str, Field(min_length=1), AfterValidator(_validate_non_whitespace_only)]
StrSet = Annotated[tuple[str, ...], AfterValidator(_sorted_unique)]
Rational = Annotated[Fraction, BeforeValidator(_to_fraction)]

StatField: TypeAlias = Literal["journal", "category"]
DensityMode: TypeAlias = Literal["mean", "sum"]
Quadrant: TypeAlias = Literal["lower_left", "upper_left", "lower_right", "upper_right"]

QUADRANTS: tuple[Quadrant, ...] = ("lower_left", "upper_left", "lower_right", "upper_right")


class BiblioRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: NonEmptyStr
    doc_type: NonEmptyStr
    authors: tuple[str, ...] = ()
    journal: str = ""
    year: int = Field(ge=1900, le=2100)
    author_keywords: tuple[str, ...] = ()
    keywords_plus: tuple[str, ...] = ()
    addresses: tuple[str, ...] = ()
    countries: StrSet = ()
    categories: tuple[str, ...] = ()
    times_cited: int = Field(default=0, ge=0)


class ParseIssue(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    line: int | None = None
    message: str

    def __str__(self) -> str:
        where = f"{self.source}:{self.line}" if self.line is not None else self.source
        return f"{where}: {self.message}"


class Provenance(BaseModel):
    model_config = ConfigDict(frozen=True)

    sources: tuple[str, ...] = ()
    parsed_at: datetime
    issues: tuple[ParseIssue, ...] = ()


class Corpus(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: tuple[BiblioRecord, ...] = ()
    provenance: Provenance

    @model_validator(mode="after")
    def validate_unique_ids(self):
        seen: set[str] = set()
        duplicates: list[str] = []
        for record in self.records:
            if record.id in seen:
                duplicates.append(record.id)
            seen.add(record.id)
        if duplicates:
            raise ValueError(f"Duplicate record ids in corpus: {', '.join(duplicates)}")
        return self

    def __len__(self) -> int:
        return len(self.records)

    def with_records(self, records: list[BiblioRecord] | tuple[BiblioRecord, ...]) -> "Corpus":
        return Corpus(records=tuple(records), provenance=self.provenance)


class FrequencyEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    key: str
    count: int = Field(ge=1)
    percent_of_total: Rational


class FrequencyTable(BaseModel):
    """Counts per key, sorted by count descending then key ascending.

    `percent_of_total` is an exact fraction of `total`; multiplying by 100
    happens at display time.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: tuple[FrequencyEntry, ...] = ()
    total: int = Field(ge=0)

    @classmethod
    def from_counts(cls, counts: Mapping[str, int], total: int) -> "FrequencyTable":
        ordered = sorted(
            ((key, count) for key, count in counts.items() if count > 0),
            key=lambda item: (-item[1], item[0]),
        )
        entries = tuple(
            FrequencyEntry(
                key=key,
                count=count,
                percent_of_total=Fraction(count, total) if total else Fraction(0),
            )
            for key, count in ordered
        )
        return cls(entries=entries, total=total)

    def top(self, n: int | None) -> "FrequencyTable":
        if n is None:
            return self
        return FrequencyTable(entries=self.entries[:n], total=self.total)

    def as_dict(self) -> dict[str, int]:
        return {entry.key: entry.count for entry in self.entries}

    def __len__(self) -> int:
        return len(self.entries)


class AuthorshipSummary(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    papers: int = Field(ge=0)
    distinct_authors: int = Field(ge=0)
    mean_authors_per_paper: Rational
    modal_authors_per_paper: int = Field(ge=0)
    single_author_fraction: Rational
    max_authors: int = Field(ge=0)
    most_prolific_author: str | None = None
    most_prolific_count: int = Field(default=0, ge=0)
    author_count_distribution: FrequencyTable
    excluded_records: tuple[str, ...] = ()

    @field_validator("single_author_fraction")
    @classmethod
    def validate_fraction(cls, v: Fraction) -> Fraction:
        if not 0 <= v <= 1:
            raise ValueError("single_author_fraction must lie in [0, 1]")
        return v


class CooperationResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    home_country: str
    table: FrequencyTable
    international_papers: int = Field(ge=0)
    international_fraction: Rational
    countries_involved: int = Field(ge=0)


class CorpusOverview(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: int
    distinct_journals: int
    distinct_categories: int
    distinct_countries: int
    first_year: int
    last_year: int


class PeerSet(BaseModel):
    """All articles of one journal-year pair: the reference population for ranking."""

    model_config = ConfigDict(frozen=True)

    journal: NonEmptyStr
    year: int
    citation_counts: tuple[Annotated[int, Field(ge=0)], ...] = Field(min_length=1)

    @property
    def N(self) -> int:
        return len(self.citation_counts)


class PriScore(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    paper_id: NonEmptyStr
    journal: str = ""
    year: int | None = None
    N: int = Field(ge=1)
    R: Rational
    pri: Rational

    @model_validator(mode="after")
    def validate_rank(self):
        if not 1 <= self.R <= self.N:
            raise ValueError(f"Rank {self.R} outside [1, {self.N}]")
        if self.pri != (self.N - self.R + 1) * 100 / Fraction(self.N):
            raise ValueError(f"PRI {self.pri} inconsistent with N={self.N}, R={self.R}")
        return self


class UnscoredPaper(BaseModel):
    model_config = ConfigDict(frozen=True)

    paper_id: NonEmptyStr
    journal: str
    year: int
    times_cited: int
    reason: str


class PriRange(BaseModel):
    """One row of a PRI range summary.

    `exact` rows count papers with PRI equal to the threshold, other rows
    count papers with PRI at or above it.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    threshold: Rational
    exact: bool = False
    count: int = Field(ge=0)
    percent_of_total: Rational


class PriOverview(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scored: int
    mean_pri: Rational
    global_average_pri: Rational
    median_peer_set_size: int
    above_global_average: int
    above_global_fraction: Rational


class Link(BaseModel):
    """Undirected co-occurrence link, `term_a < term_b`."""

    model_config = ConfigDict(frozen=True)

    term_a: str
    term_b: str
    co_count: int = Field(ge=1)
    cosine: float = Field(ge=0.0, le=1.0)
    # Exact square of the cosine; ordering and thresholds compare this, never the float
    cosine_squared: Rational

    @model_validator(mode="before")
    @classmethod
    def fill_cosine_squared(cls, data):
        if isinstance(data, dict) and data.get("cosine_squared") is None and "cosine" in data:
            data = {**data, "cosine_squared": _to_fraction(float(data["cosine"])) ** 2}
        return data

    @model_validator(mode="after")
    def validate_order(self):
        if not self.term_a < self.term_b:
            raise ValueError(f"Link terms out of order: '{self.term_a}' >= '{self.term_b}'")
        return self


class Cluster(BaseModel):
    model_config = ConfigDict(frozen=True)

    number: int = Field(ge=1)
    terms: tuple[str, ...] = Field(min_length=1)
    internal_edges: tuple[Link, ...] = ()
    density: float = Field(default=0.0, ge=0.0)
    centrality: float = Field(default=0.0, ge=0.0)
    label: str

    @model_validator(mode="after")
    def validate_label(self):
        if self.label not in self.terms:
            raise ValueError(f"Cluster {self.number}: label '{self.label}' is not a member")
        if len(set(self.terms)) != len(self.terms):
            raise ValueError(f"Cluster {self.number}: duplicate terms")
        return self

    def ordered_terms(self) -> tuple[str, ...]:
        """Member terms with the label first."""
        return (self.label, *(t for t in self.terms if t != self.label))


class ClusterSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    clusters: tuple[Cluster, ...] = ()
    external_edges: tuple[Link, ...] = ()
    min_cosine: float = 0.2
    min_size: int = Field(default=3, ge=1)
    max_size: int = Field(default=10, ge=1)
    density_mode: DensityMode = "mean"

    @model_validator(mode="after")
    def validate_partition(self):
        seen: set[str] = set()
        for cluster in self.clusters:
            if not self.min_size <= len(cluster.terms) <= self.max_size:
                raise ValueError(
                    f"Cluster {cluster.number} has {len(cluster.terms)} terms, "
                    f"outside [{self.min_size}, {self.max_size}]"
                )
            overlap = seen.intersection(cluster.terms)
            if overlap:
                raise ValueError(f"Clusters overlap on terms: {', '.join(sorted(overlap))}")
            seen.update(cluster.terms)
        return self

    @property
    def clustered_terms(self) -> int:
        return sum(len(c.terms) for c in self.clusters)

    def membership(self) -> dict[str, int]:
        return {term: c.number for c in self.clusters for term in c.terms}

    def __len__(self) -> int:
        return len(self.clusters)


class DiagramPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    cluster_number: int
    centrality: float
    density: float
    quadrant: Quadrant


class StrategicDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: tuple[DiagramPoint, ...] = ()
    median_centrality: float
    median_density: float

    def in_quadrant(self, quadrant: Quadrant) -> list[int]:
        return [p.cluster_number for p in self.points if p.quadrant == quadrant]


class RenderConfig(BaseModel):
    width: int = Field(default=800, ge=100)
    height: int = Field(default=600, ge=100)
    margin_left: int = Field(default=70, ge=0)
    margin_right: int = Field(default=30, ge=0)
    margin_top: int = Field(default=50, ge=0)
    margin_bottom: int = Field(default=60, ge=0)
    dash_pattern: str = Field(default="6,4", pattern=r"^\d+(,\d+)*$")
    font_family: str = "Helvetica, Arial, sans-serif"
    font_size: int = Field(default=12, ge=4)
    point_radius: float = Field(default=3.0, gt=0)
    bar_color: str = "#4a6fa5"
    point_color: str = "#2f4b7c"
    line_color: str = "#888888"
    yearly_caption: str = "Publications per year"
    pri_caption: str = "Percentile Rank Index of research papers"
    diagram_caption: str = "Centrality-density diagram of keyword clusters"


class StudyConfig(BaseModel):
    """Study settings; every field mirrors a command-line flag."""

    model_config = ConfigDict(extra="forbid")

    corpus: list[str] = Field(default_factory=list)
    peers: list[str] = Field(default_factory=list)
    out: str = "./output"
    home_country: NonEmptyStr = "NORWAY"
    year_min: int = Field(default=1994, ge=1900, le=2100)
    year_max: int = Field(default=2014, ge=1900, le=2100)
    pri_year_max: int | None = Field(default=2012, ge=1900, le=2100)
    min_freq: int = Field(default=4, ge=1)
    min_cos: float = Field(default=0.2, ge=0.0, le=1.0)
    min_size: int = Field(default=3, ge=1)
    max_size: int = Field(default=10, ge=1)
    stoplist: str | None = None
    countries: str | None = None
    strict: bool = False
    density_mode: DensityMode = "mean"
    top_categories: int = Field(default=10, ge=1)
    top_terms: int = Field(default=12, ge=1)
    max_concurrent: int = Field(default=4, ge=1)
    render: RenderConfig = Field(default_factory=RenderConfig)

    @model_validator(mode="after")
    def validate_ranges(self):
        if self.year_min > self.year_max:
            raise ValueError(f"year_min ({self.year_min}) must not exceed year_max ({self.year_max})")
        if self.min_size > self.max_size:
            raise ValueError(f"min_size ({self.min_size}) must not exceed max_size ({self.max_size})")
        return self

    @property
    def effective_pri_year_max(self) -> int:
        if self.pri_year_max is None:
            return self.year_max
        return min(self.pri_year_max, self.year_max)
