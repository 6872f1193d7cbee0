"""
Tests for CLI display utilities.

Tests all display functions in src/core/cli/utils/display.py.
"""

from unittest.mock import patch

import pytest
from rich.table import Table

from src.core.cli.utils import display
from src.core.cli.utils.display import (
    create_assignment_table,
    create_rates_table,
    create_score_table,
    create_stability_table,
    display_stats,
    print_error,
    print_info,
    print_success,
    print_table,
    print_warning,
    set_verbosity,
)
from src.core.physics import LinkRates
from src.core.pipeline.status import FAILED, QualityBand
from src.core.scoring import score_links
from src.core.stability.analysis import SelectorSummary


@pytest.fixture(autouse=True)
def _normal_verbosity():
    set_verbosity(0, quiet=False)
    yield
    set_verbosity(0, quiet=False)


def _link_rates(link="alice-bob", skr=2.0):
    return LinkRates(
        link=link, singles_a=1e4, singles_b=1e4, true_coincidences=50.0, accidentals=0.05,
        qber=0.01, sifted_rate=25.0, skr=skr, pairs=(6, 9), scenario="D-D",
    )


class TestPrintFunctions:
    """Test print utility functions."""

    @patch('src.core.cli.utils.display.console')
    def test_print_success(self, mock_console):
        """Test printing success message."""
        print_success("Assignment verified")

        mock_console.print.assert_called_once_with("[green]✓[/green] Assignment verified")

    @patch('src.core.cli.utils.display.console')
    def test_print_error(self, mock_console):
        """Test printing error message."""
        print_error("Plan infeasible")

        mock_console.print.assert_called_once_with("[red]✗[/red] Plan infeasible")

    @patch('src.core.cli.utils.display.console')
    def test_print_warning(self, mock_console):
        """Test printing warning message."""
        print_warning("Network FAILED")

        mock_console.print.assert_called_once_with("[yellow]⚠[/yellow] Network FAILED")

    @patch('src.core.cli.utils.display.console')
    def test_print_info(self, mock_console):
        """Test printing info message."""
        print_info("Sweeping 94 points")

        mock_console.print.assert_called_once_with("[cyan]ℹ[/cyan] Sweeping 94 points")

    @patch('src.core.cli.utils.display.console')
    def test_quiet_mode_keeps_errors_only(self, mock_console):
        """Quiet mode silences everything but errors."""
        with patch.object(display, "_quiet_mode", True):
            print_success("hidden")
            print_warning("hidden")
            print_info("hidden")
            print_table(Table())
            display_stats({"a": 1})
            print_error("shown")

        mock_console.print.assert_called_once_with("[red]✗[/red] shown")


class TestTables:
    """Test Rich table builders."""

    def test_assignment_table(self):
        rows = [
            {"user": "alice", "attachment": "deployed", "status": "active", "copies": 4, "channels": "+6 +7"},
            {"user": "kevin", "attachment": "local", "status": "failed", "copies": 4, "channels": "-7"},
        ]
        table = create_assignment_table(rows)

        assert isinstance(table, Table)
        assert table.row_count == 2
        assert [c.header for c in table.columns] == ["User", "Fibre", "Status", "Copies", "Channels"]

    def test_rates_table_limit(self):
        rates = [_link_rates(f"u{i}-v{i}") for i in range(5)]
        table = create_rates_table(rates, [QualityBand.OK] * 5, limit=3)

        assert table.row_count == 3
        assert table.caption == "Showing 3 of 5 links"

    def test_rates_table_all(self):
        table = create_rates_table([_link_rates()], [QualityBand.GOOD])
        assert table.row_count == 1
        assert table.caption is None

    def test_score_table(self):
        reports = [score_links({"a-b": 2.0}, label="a"), score_links({"a-b": 0.01}, label="b")]
        table = create_score_table(reports)

        assert table.row_count == 2
        assert table.columns[0].header == "Group"

    def test_stability_table(self):
        rows = [
            SelectorSummary("full network", 45, 3.38, 4.0, 2.9),
            SelectorSummary("dave", 9, FAILED, FAILED, FAILED),
        ]
        table = create_stability_table(rows)

        assert table.row_count == 2
        assert list(table.columns[1].cells) == ["3.3800", "FAILED"]


class TestDisplayStats:
    """Test display_stats function."""

    @patch('src.core.cli.utils.display.console')
    def test_display_stats(self, mock_console):
        display_stats({"Links": 45, "AE-SKR": "3.3818 bps"})

        mock_console.print.assert_called_once()
        table = mock_console.print.call_args[0][0]
        assert table.row_count == 2

    @patch('src.core.cli.utils.display.console')
    def test_display_stats_empty(self, mock_console):
        display_stats({})

        mock_console.print.assert_called_once()
