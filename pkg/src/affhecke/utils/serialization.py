import csv
import io
import json
from typing import Any, Iterable, Mapping, Optional, Sequence

from affhecke.config import conventions_header


def dump_json(payload: Mapping[str, Any], conventions: Optional[Mapping[str, str]] = None) -> str:
    """Deterministic JSON with the conventions block embedded under ``"conventions"``."""
    document = dict(payload)
    document["conventions"] = dict(conventions if conventions is not None else conventions_header())
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)


def rows_to_csv(
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    conventions: Optional[Mapping[str, str]] = None,
) -> str:
    """CSV text preceded by ``# key: value`` comment lines for the conventions."""
    conventions = conventions if conventions is not None else conventions_header()
    buffer = io.StringIO()
    for key in sorted(conventions):
        buffer.write(f"# {key}: {conventions[key]}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()

