"""
Tests for CLI output format utilities.

Tests all output functions in src/core/cli/utils/output.py.
"""

import csv
import json

import numpy as np
import pytest

from src.core.cli.utils.output import (
    OutputFormat,
    save_records,
    save_records_csv,
    save_records_json,
    write_json,
)
from src.core.pipeline.status import FAILED, QualityBand


@pytest.fixture
def sample_records():
    """Sample rate records for testing."""
    return [
        {"link": "alice-bob", "skr": 2.5, "band": QualityBand.OK},
        {"link": "alice-faye", "skr": 0.05, "band": QualityBand.UNACCEPTABLE},
        {"link": "faye-gopi", "skr": float("nan"), "band": QualityBand.GREAT},
    ]


class TestOutputFormat:
    """Test OutputFormat enum."""

    def test_output_format_values(self):
        """Test that OutputFormat has correct values."""
        assert OutputFormat.json == "json"
        assert OutputFormat.csv == "csv"

    def test_output_format_is_string_enum(self):
        """Test that OutputFormat values are strings."""
        assert isinstance(OutputFormat.json.value, str)
        assert isinstance(OutputFormat.csv.value, str)


class TestWriteJson:
    """Test write_json."""

    def test_numpy_and_enums(self, tmp_path):
        """numpy scalars, enums and non-finite floats become plain JSON."""
        path = tmp_path / "nested" / "report.json"
        write_json({"w": np.float64(0.5), "n": np.int64(3), "aeskr": FAILED, "x": float("inf")}, path)

        data = json.loads(path.read_text())
        assert data == {"w": 0.5, "n": 3, "aeskr": "FAILED", "x": None}

    def test_tuples_and_int_keys(self, tmp_path):
        path = tmp_path / "spectrum.json"
        write_json({1: (0.9, 1.0)}, path)

        assert json.loads(path.read_text()) == {"1": [0.9, 1.0]}

    def test_unicode(self, tmp_path):
        path = tmp_path / "pairs.json"
        write_json({"pairs": "±6 ±9"}, path)

        assert "±6" in path.read_text(encoding="utf-8")


class TestSaveRecords:
    """Test save_records and its format helpers."""

    def test_json(self, tmp_path, sample_records):
        path = tmp_path / "rates.json"
        save_records_json(sample_records, path)

        data = json.loads(path.read_text())
        assert len(data) == 3
        assert data[1]["band"] == "unacceptable"
        assert data[2]["skr"] is None

    def test_csv(self, tmp_path, sample_records):
        path = tmp_path / "rates.csv"
        save_records_csv(sample_records, path)

        with open(path, newline="") as f:
            rows = list(csv.DictReader(f))
        assert [r["link"] for r in rows] == ["alice-bob", "alice-faye", "faye-gopi"]
        assert rows[0]["band"] == "ok"
        assert rows[2]["skr"] == ""

    def test_csv_fieldnames(self, tmp_path, sample_records):
        path = tmp_path / "rates.csv"
        save_records_csv(sample_records, path, fieldnames=["skr", "link", "missing"])

        header = path.read_text().splitlines()[0]
        assert header == "skr,link,missing"

    def test_csv_empty(self, tmp_path):
        path = tmp_path / "empty.csv"
        save_records_csv([], path, fieldnames=["link", "skr"])

        assert path.read_text().strip() == "link,skr"

    @pytest.mark.parametrize("fmt,suffix", [(OutputFormat.json, ".json"), (OutputFormat.csv, ".csv")])
    def test_dispatch(self, tmp_path, sample_records, fmt, suffix):
        path = tmp_path / f"rates{suffix}"
        save_records(sample_records, path, format=fmt)

        assert path.exists()

    def test_invalid_format(self, tmp_path, sample_records):
        with pytest.raises(ValueError, match="Unsupported format"):
            save_records(sample_records, tmp_path / "x.xml", format="xml")
