"""Shared state of one CLI run: config, loaded inputs, cached stage results and output writing."""

import time
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TypeVar

from biblioscope.cli.pipeline.logging_manager import StructuredLogger
from biblioscope.core.load.countries import CountryTable, default_table
from biblioscope.core.load.load import load_corpus, load_peer_sets, load_stoplist
from biblioscope.core.load.parse import filter_research_articles
from biblioscope.core.shapes import Corpus, PeerSet, StudyConfig

T = TypeVar("T")


@dataclass
class RunContext:
    config: StudyConfig
    logger: StructuredLogger
    stage_name: str = "run"
    files_written: list[Path] = field(default_factory=list)
    _memo: dict[str, Any] = field(default_factory=dict)

    @property
    def out_dir(self) -> Path:
        return Path(self.config.out)

    def memo(self, key: str, compute: Callable[[], T]) -> T:
        """Compute a value once per run."""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def countries(self) -> CountryTable:
        return self.memo(
            "countries",
            lambda: CountryTable.load(self.config.countries) if self.config.countries else default_table(),
        )

    def corpus(self) -> Corpus:
        return self.memo(
            "corpus",
            lambda: load_corpus(
                self.config.corpus,
                strict=self.config.strict,
                countries=self.countries(),
                max_concurrent=self.config.max_concurrent,
            ),
        )

    def articles(self) -> Corpus:
        """Research articles within [year_min, year_max]."""
        return self.memo(
            "articles",
            lambda: filter_research_articles(self.corpus(), self.config.year_min, self.config.year_max),
        )

    def pri_targets(self) -> Corpus:
        """Research articles within [year_min, pri_year_max]."""
        return self.memo(
            "pri_targets",
            lambda: filter_research_articles(
                self.corpus(), self.config.year_min, self.config.effective_pri_year_max
            ),
        )

    def peer_sets(self) -> dict[tuple[str, int], PeerSet]:
        return self.memo(
            "peer_sets",
            lambda: load_peer_sets(
                self.config.peers,
                strict=self.config.strict,
                countries=self.countries(),
                max_concurrent=self.config.max_concurrent,
            ),
        )

    def stoplist(self) -> set[str]:
        return self.memo("stoplist", lambda: load_stoplist(self.config.stoplist))

    @contextmanager
    def stage(self, name: str, **details: Any) -> Iterator[None]:
        previous, self.stage_name = self.stage_name, name
        start = time.time()
        self.logger.log_stage_start(name, **details)
        try:
            yield
        except Exception as e:
            self.logger.log_stage_error(name, type(e).__name__, str(e))
            raise
        else:
            self.logger.log_stage_complete(name, (time.time() - start) * 1000)
        finally:
            self.stage_name = previous

    def write(self, name: str, text: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / name
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        self.files_written.append(path)
        self.logger.log_file_written(self.stage_name, str(path), len(text.encode("utf-8")))
        return path

    def write_all(self, files: dict[str, str]) -> None:
        """Write several outputs at once, in the given order."""
        for name, text in files.items():
            self.write(name, text)
