"""Output format utilities for CLI."""
import csv
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence


class OutputFormat(str, Enum):
    """Available output formats."""
    json = "json"
    csv = "csv"


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if hasattr(value, "item") and callable(value.item):  # numpy scalars
        return _json_safe(value.item())
    return value


def write_json(data: Any, output_path: Path) -> None:
    """Write a JSON document; NaN and infinities become null."""
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(json.dumps(_json_safe(data), indent=2, ensure_ascii=False) + "\n")


def save_records_json(records: List[Dict[str, Any]], output_path: Path) -> None:
    """Save records to JSON format."""
    write_json(records, output_path)


def save_records_csv(
    records: List[Dict[str, Any]], output_path: Path, fieldnames: Optional[Sequence[str]] = None
) -> None:
    """Save flat records to CSV format."""
    output_path.parent.mkdir(parents=True, exist_ok=True)
    if fieldnames is None:
        fieldnames = list(records[0].keys()) if records else []

    with open(output_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(fieldnames), extrasaction="ignore")
        writer.writeheader()
        for record in records:
            row = {}
            for key in fieldnames:
                value = _json_safe(record.get(key, ""))
                row[key] = "" if value is None else value
            writer.writerow(row)


def save_records(
    records: List[Dict[str, Any]],
    output_path: Path,
    format: OutputFormat = OutputFormat.json,
    fieldnames: Optional[Sequence[str]] = None,
) -> None:
    """
    Save records to file in specified format.

    Args:
        records: List of flat dictionaries
        output_path: Path to output file
        format: Output format (json or csv)
        fieldnames: CSV column order (default: keys of the first record)
    """
    if format == OutputFormat.json:
        save_records_json(records, output_path)
    elif format == OutputFormat.csv:
        save_records_csv(records, output_path, fieldnames)
    else:
        raise ValueError(f"Unsupported format: {format}")
