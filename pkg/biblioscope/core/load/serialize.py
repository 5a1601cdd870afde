"""Writers for parsed corpora: tagged export text and line-delimited JSON."""

from biblioscope.core.load.config import (
    CONTINUATION,
    END_OF_FILE,
    END_OF_RECORD,
    EXPORT_HEADER,
    LINE_ITEM_TAGS,
    SPLIT_TAGS,
)
from biblioscope.core.shapes import BiblioRecord, Corpus


def _tag_lines(tag: str, values: list[str] | tuple[str, ...]) -> list[str]:
    if not values:
        return []
    if tag in LINE_ITEM_TAGS:
        first, *rest = values
        return [f"{tag} {first}", *(f"{CONTINUATION}{value}" for value in rest)]
    if tag in SPLIT_TAGS:
        return [f"{tag} {'; '.join(values)}"]
    return [f"{tag} {values[0]}"]


def serialize_record(record: BiblioRecord) -> list[str]:
    lines = ["PT J", f"UT {record.id}"]
    lines += _tag_lines("AU", record.authors)
    lines += _tag_lines("DT", [record.doc_type])
    lines += _tag_lines("SO", [record.journal] if record.journal else [])
    lines += [f"PY {record.year}", f"TC {record.times_cited}"]
    lines += _tag_lines("DE", record.author_keywords)
    lines += _tag_lines("ID", record.keywords_plus)
    lines += _tag_lines("WC", record.categories)
    lines += _tag_lines("C1", record.addresses)
    lines.append(END_OF_RECORD)
    return lines


def serialize_export(corpus: Corpus) -> str:
    """Tagged export text; parsing it yields field-identical records."""
    lines: list[str] = list(EXPORT_HEADER)
    for record in corpus.records:
        lines += serialize_record(record)
        lines.append("")
    lines.append(END_OF_FILE)
    return "\n".join(lines) + "\n"


def dump_corpus(corpus: Corpus) -> str:
    """One JSON object per record, fields in declaration order."""
    return "".join(record.model_dump_json() + "\n" for record in corpus.records)
