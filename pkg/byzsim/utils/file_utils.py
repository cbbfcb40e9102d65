"""
File, JSON and CSV utilities
"""
import csv
import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence


def save_json(path: Path, data: Any):
    """Write JSON through a temporary file so readers never see a partial record."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2, default=str)
    os.replace(tmp, path)


def load_json(path: Path) -> Optional[Any]:
    """Parsed JSON, or None when the file is absent."""
    if not path.exists():
        return None
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def format_cell(value: Any) -> str:
    """Render one CSV cell: floats at 6 decimals, None as an empty field."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def save_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]):
    """Write a header plus formatted rows. Line endings are fixed to '\\n'."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])


def load_csv(path: Path) -> List[Dict[str, str]]:
    """Read a CSV file into a list of header-keyed dicts (values stay strings)."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))
