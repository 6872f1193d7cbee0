"""
Helper utilities to read qnetctl inputs from disk.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional

import pandas as pd

from src.core.grid import GridConfig
from src.core.stability import DowntimeInterval
from src.core.topology import ChannelAssignment


def _require(path: Path | str) -> Path:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Input file not found: {path}")
    return path


def _read_csv_keeping_bad_lines(path: Path) -> tuple[pd.DataFrame, List[List[str]]]:
    """Read a CSV, setting aside rows with too many fields instead of failing."""
    bad_lines: List[List[str]] = []

    def _set_aside(fields: List[str]) -> None:
        bad_lines.append(fields)
        return None

    frame = pd.read_csv(path, engine="python", on_bad_lines=_set_aside)
    return frame, bad_lines


def _rate_entry(item: Any, position: int) -> tuple[str, float]:
    if isinstance(item, (int, float)) and not isinstance(item, bool):
        return f"link-{position}", float(item)
    if isinstance(item, dict):
        skr = item.get("skr_bps", item.get("skr"))
        if skr is None:
            raise ValueError(f"Entry {position} has no skr_bps field")
        return str(item.get("link", f"link-{position}")), float(skr)
    raise ValueError(f"Entry {position} is neither a number nor an object: {item!r}")


def _duplicates(keys: Iterable[str]) -> List[str]:
    return sorted(key for key, count in Counter(keys).items() if count > 1)


def _unique_rates(entries: Iterable[tuple[str, float]], path: Path) -> Dict[str, float]:
    entries = list(entries)
    duplicates = _duplicates(link for link, _ in entries)
    if duplicates:
        raise ValueError(f"{path}: duplicate link ids {', '.join(duplicates)}")
    return dict(entries)


def _unique_keys(pairs: List[tuple[str, Any]], path: Path) -> Dict[str, Any]:
    duplicates = _duplicates(key for key, _ in pairs)
    if duplicates:
        raise ValueError(f"{path}: duplicate keys {', '.join(duplicates)}")
    return dict(pairs)


def read_skr_values(input_path: Path | str) -> Dict[str, float]:
    """
    Read link key rates for scoring.

    Accepted layouts:
        - CSV with a ``skr_bps`` column and an optional ``link`` column
        - JSON: a list of numbers, a list of ``{"link", "skr_bps"}`` objects,
          or a ``{link: skr}`` mapping
        - plain text, one rate per line (``#`` comments allowed)

    Returns:
        Mapping of link id to SKR in insertion order

    Raises:
        FileNotFoundError: If input file doesn't exist
        ValueError: On unparseable content
    """
    input_path = _require(input_path)
    suffix = input_path.suffix.lower()

    if suffix == ".csv":
        frame = pd.read_csv(input_path)
        if "skr_bps" not in frame.columns:
            raise ValueError(f"{input_path}: CSV needs a skr_bps column")
        links = (
            frame["link"].astype(str)
            if "link" in frame.columns
            else pd.Series([f"link-{i}" for i in range(1, len(frame) + 1)])
        )
        return _unique_rates(zip(links, frame["skr_bps"].astype(float)), input_path)

    text = input_path.read_text(encoding="utf8")
    if suffix == ".json":
        try:
            data = json.loads(text, object_pairs_hook=lambda pairs: _unique_keys(pairs, input_path))
        except json.JSONDecodeError as e:
            raise ValueError(f"{input_path}: invalid JSON ({e.msg})") from e
        if isinstance(data, dict):
            return {str(k): float(v) for k, v in data.items()}
        if not isinstance(data, list):
            raise ValueError(f"{input_path}: expected a list or mapping of rates")
        entries = [_rate_entry(item, i) for i, item in enumerate(data, start=1)]
        return _unique_rates(entries, input_path)

    rates: Dict[str, float] = {}
    for line_num, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rates[f"link-{len(rates) + 1}"] = float(line)
        except ValueError:
            raise ValueError(f"Invalid rate on line {line_num}: {line!r}")
    return rates


def iter_trace_records(input_path: Path | str) -> Iterator[Dict[str, Any]]:
    """
    Yield SKR records from a JSON-lines or CSV log.

    Undecodable lines are yielded as ``{"raw": line}`` so that ingestion
    counts them as rejected instead of aborting.
    """
    input_path = _require(input_path)

    if input_path.suffix.lower() == ".csv":
        frame, bad_lines = _read_csv_keeping_bad_lines(input_path)
        yield from frame.to_dict(orient="records")
        for fields in bad_lines:
            yield {"raw": ",".join(fields)}
        return

    with input_path.open("r", encoding="utf8") as stream:
        for line in stream:
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError:
                yield {"raw": line}
                continue
            yield data if isinstance(data, dict) else {"raw": line}


def read_masks(input_path: Path | str) -> List[DowntimeInterval]:
    """
    Read downtime intervals from JSON (list of objects or ``[start, end, reason]``
    triples) or CSV (``start,end[,reason]``).
    """
    input_path = _require(input_path)

    if input_path.suffix.lower() == ".csv":
        frame, bad_lines = _read_csv_keeping_bad_lines(input_path)
        if bad_lines:
            raise ValueError(f"{input_path}: malformed mask row {','.join(bad_lines[0])!r}")
        rows: List[Any] = frame.to_dict(orient="records")
    else:
        try:
            rows = json.loads(input_path.read_text(encoding="utf8"))
        except json.JSONDecodeError as e:
            raise ValueError(f"{input_path}: invalid JSON ({e.msg})") from e
        if isinstance(rows, dict):
            rows = rows.get("masks", [])

    masks = []
    for position, row in enumerate(rows, start=1):
        try:
            if isinstance(row, dict):
                reason = row.get("reason", "downtime")
                masks.append(DowntimeInterval(
                    float(row["start"]),
                    float(row["end"]),
                    "downtime" if pd.isna(reason) else str(reason),
                ))
            else:
                masks.append(DowntimeInterval(float(row[0]), float(row[1]), *map(str, row[2:3])))
        except (KeyError, IndexError, TypeError, ValueError) as e:
            raise ValueError(f"{input_path}: invalid mask {position}: {e}") from e
    return masks


def read_assignment(input_path: Path | str, grid: Optional[GridConfig] = None) -> ChannelAssignment:
    """Load an assignment written by ``qnetctl plan``."""
    input_path = _require(input_path)
    try:
        data = json.loads(input_path.read_text(encoding="utf8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{input_path}: invalid JSON ({e.msg})") from e
    if isinstance(data, dict) and "assignment" in data:
        data = data["assignment"]
    return ChannelAssignment.from_dict(data, grid)
