"""Country normalization for C1 address segments."""

import logging
import re
from importlib.resources import files
from pathlib import Path

from biblioscope.core.shapes import UNRESOLVED

logger = logging.getLogger(__name__)

# "AK 99775 USA", "CA 94305-2004 USA", "USA"
_US_ADDRESS = re.compile(r"(?:[A-Z]{2}\s+)?(?:\d{5}(?:-\d{4})?\s+)?USA")
_AUTHOR_GROUP = re.compile(r"\[[^\]]*\]")


class CountryTableError(Exception):
    """Raised when a country table file cannot be read."""


def _canonical_token(text: str) -> str:
    return " ".join(text.split()).upper()


class CountryTable:
    """Canonical country names plus an alias map onto them."""

    def __init__(self, canonical: set[str] | None = None, aliases: dict[str, str] | None = None):
        self.canonical: set[str] = set(canonical or ())
        self.aliases: dict[str, str] = dict(aliases or {})

    @classmethod
    def from_text(cls, text: str, source: str = "<table>") -> "CountryTable":
        canonical: set[str] = set()
        aliases: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                alias, _, target = line.partition("=")
                alias, target = _canonical_token(alias), _canonical_token(target)
                if not alias or not target:
                    raise CountryTableError(f"{source}:{lineno}: malformed alias line '{raw}'")
                aliases[alias] = target
                canonical.add(target)
            else:
                canonical.add(_canonical_token(line))
        return cls(canonical, aliases)

    @classmethod
    def packaged(cls) -> "CountryTable":
        text = files("biblioscope.core.load").joinpath("countries.txt").read_text(encoding="utf-8")
        return cls.from_text(text, source="countries.txt")

    @classmethod
    def load(cls, override: str | Path | None = None) -> "CountryTable":
        """Packaged table, with an optional user file merged over it."""
        table = cls.packaged()
        if override is None:
            return table
        path = Path(override)
        if not path.exists():
            raise CountryTableError(f"Country table not found: {path}")
        return table.merged(cls.from_text(path.read_text(encoding="utf-8"), source=str(path)))

    def merged(self, other: "CountryTable") -> "CountryTable":
        return CountryTable(self.canonical | other.canonical, {**self.aliases, **other.aliases})

    def resolve(self, token: str) -> str | None:
        token = _canonical_token(token)
        if _US_ADDRESS.fullmatch(token):
            return "USA"
        token = self.aliases.get(token, token)
        return token if token in self.canonical else None


_default_table: CountryTable | None = None


def default_table() -> CountryTable:
    global _default_table
    if _default_table is None:
        _default_table = CountryTable.packaged()
    return _default_table


def strip_author_groups(address: str) -> str:
    """Drop bracketed author lists: '[Smith, A; Jones, B] Univ X, Norway' -> 'Univ X, Norway'."""
    return " ".join(_AUTHOR_GROUP.sub(" ", address).split())


def normalize_country(address: str, table: CountryTable | None = None) -> str:
    """Canonical country of one C1 address segment, or UNRESOLVED.

    The country is the final comma-separated token of the address.
    """
    table = table or default_table()
    cleaned = strip_author_groups(address).rstrip(". ")
    token = cleaned.rsplit(",", 1)[-1] if cleaned else ""

    country = table.resolve(token) if token.strip() else None
    if country is None:
        logger.warning(f"Unresolved country in address: '{address}'")
        return UNRESOLVED
    return country
