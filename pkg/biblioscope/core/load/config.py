"""Shared constants for the field-tagged export format."""

# File-level header tags, ignored outside of records
HEADER_TAGS = {"FN", "VR"}

END_OF_RECORD = "ER"
END_OF_FILE = "EF"

# Continuation lines start with this indent
CONTINUATION = "   "

# Tags whose physical lines are separate items (one author/address per line)
LINE_ITEM_TAGS = {"AU", "C1"}

# Tags joined across continuation lines, then split on ';'
SPLIT_TAGS = {"DE", "ID", "WC"}

# Default header written by the serializer
EXPORT_HEADER = ("FN Biblioscope Export", "VR 1.0")

# Peer CSV columns for the minimal journal-year format
PEER_CSV_COLUMNS = ("journal", "year", "times_cited")
