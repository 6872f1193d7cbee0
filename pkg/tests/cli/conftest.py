"""Pytest configuration and fixtures for CLI tests."""
import json
import subprocess
import sys
from pathlib import Path
from typing import List

import pytest
from typer.testing import CliRunner

PROJECT_ROOT = Path(__file__).parent.parent.parent


class RealCliResult:
    """Result from a real CLI invocation."""

    def __init__(self, stdout: str, stderr: str, exit_code: int):
        self.stdout = stdout
        self.stderr = stderr
        self.exit_code = exit_code
        self.output = stdout  # Alias for compatibility


class RealCliRunner:
    """
    Real CLI Runner that executes commands as subprocess.

    Exit codes, stdout and the lazy command imports are exercised exactly
    as a user sees them.
    """

    def invoke(self, app, args: List[str], **kwargs) -> RealCliResult:
        """
        Invoke CLI command as subprocess.

        Args:
            app: Typer app (ignored, we use the qnetctl module directly)
            args: Command arguments (e.g., ["plan", "--config", "network.json"])
            **kwargs: Additional options (ignored)

        Returns:
            RealCliResult with stdout, stderr, exit_code
        """
        # Build command: python -m src.core.cli.app <args>
        cmd = [sys.executable, "-m", "src.core.cli.app"] + args

        try:
            result = subprocess.run(
                cmd,
                capture_output=True,
                text=True,
                timeout=300,
                cwd=PROJECT_ROOT,
            )

            return RealCliResult(
                stdout=result.stdout,
                stderr=result.stderr,
                exit_code=result.returncode
            )

        except subprocess.TimeoutExpired:
            return RealCliResult(
                stdout="",
                stderr="Command timeout",
                exit_code=124
            )


@pytest.fixture
def cli_runner():
    """Provide a real CLI test runner using subprocess."""
    return RealCliRunner()


@pytest.fixture
def mock_cli_runner():
    """Provide a Typer CliRunner for in-process testing with mocks."""
    return CliRunner()


@pytest.fixture
def example_config():
    """The twelve-user example network shipped with the repository."""
    return PROJECT_ROOT / "config.example.json"


@pytest.fixture
def measured_rates(tmp_path):
    """Key rates of a healthy three-link network in every accepted layout."""
    rates = {"alice-bob": 3.0, "alice-dave": 1.5, "bob-dave": 4.5}
    csv_path = tmp_path / "rates.csv"
    csv_path.write_text("link,skr_bps\n" + "".join(f"{k},{v}\n" for k, v in rates.items()))
    json_path = tmp_path / "rates.json"
    json_path.write_text(json.dumps(rates))
    txt_path = tmp_path / "rates.txt"
    txt_path.write_text("\n".join(str(v) for v in rates.values()) + "\n")
    return {"csv": csv_path, "json": json_path, "txt": txt_path}
