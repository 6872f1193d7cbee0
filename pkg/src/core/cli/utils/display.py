"""Display utilities for CLI using Rich."""
from typing import Any, Dict, List, Sequence

from rich.console import Console
from rich.table import Table

from src.core.pipeline.status import format_band, format_outcome, is_failed

console = Console()
_verbosity_level = 0
_quiet_mode = False


def set_verbosity(level: int = 0, quiet: bool = False) -> None:
    """Configure display verbosity and quiet mode."""
    global _verbosity_level, _quiet_mode, console
    _verbosity_level = level
    _quiet_mode = quiet
    console = Console(quiet=quiet)


def flags_set_verbosity() -> bool:
    """True when -q, -v or -vv was given on the command line."""
    return _quiet_mode or _verbosity_level > 0


def print_success(message: str) -> None:
    """Print success message."""
    if _quiet_mode:
        return
    console.print(f"[green]✓[/green] {message}")


def print_error(message: str) -> None:
    """Print error message."""
    console.print(f"[red]✗[/red] {message}")


def print_warning(message: str) -> None:
    """Print warning message."""
    if _quiet_mode:
        return
    console.print(f"[yellow]⚠[/yellow] {message}")


def print_info(message: str) -> None:
    """Print info message."""
    if _quiet_mode:
        return
    console.print(f"[cyan]ℹ[/cyan] {message}")


def print_table(table: Table) -> None:
    if _quiet_mode:
        return
    console.print(table)


def _rate(value: Any) -> str:
    return "FAILED" if is_failed(value) else f"{float(value):.4f}"


def create_assignment_table(rows: List[Dict[str, Any]], title: str = "Channel assignment") -> Table:
    """Create a Rich table of users and the logical channels they hold."""
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("User", style="cyan", no_wrap=True)
    table.add_column("Fibre", style="white")
    table.add_column("Status", style="white")
    table.add_column("Copies", justify="right", style="magenta")
    table.add_column("Channels", style="white")

    for row in rows:
        status = row["status"] if row["status"] == "active" else f"[yellow]{row['status']}[/yellow]"
        table.add_row(row["user"], row["attachment"], status, str(row["copies"]), row["channels"])
    return table


def create_rates_table(rates: Sequence[Any], bands: Sequence[Any], limit: int = 50) -> Table:
    """Create a Rich table of simulated link rates."""
    table = Table(title="Link rates", show_header=True, header_style="bold magenta")
    table.add_column("Link", style="cyan", no_wrap=True)
    table.add_column("Scenario", style="white")
    table.add_column("Pairs", style="white")
    table.add_column("Coinc. /s", justify="right")
    table.add_column("Acc. /s", justify="right")
    table.add_column("QBER", justify="right")
    table.add_column("SKR bps", justify="right", style="green")
    table.add_column("Band", style="white")

    for rate, band in list(zip(rates, bands))[:limit]:
        table.add_row(
            rate.link,
            rate.scenario or "",
            " ".join(f"±{k}" for k in rate.pairs),
            f"{rate.true_coincidences:.2f}",
            f"{rate.accidentals:.2f}",
            f"{rate.qber:.4f}",
            f"{rate.skr:.4f}",
            format_band(band),
        )
    if len(rates) > limit:
        table.caption = f"Showing {limit} of {len(rates)} links"
    return table


def create_score_table(reports: Sequence[Any], title: str = "AE-SKR") -> Table:
    """Create a Rich table of score reports, one row per subgroup."""
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Group", style="cyan", no_wrap=True)
    table.add_column("Links", justify="right")
    table.add_column("W", justify="right")
    table.add_column("AE-SKR", justify="right", style="green")
    table.add_column("Mean SKR", justify="right")

    for report in reports:
        table.add_row(
            report.label,
            str(len(report.links)),
            f"{report.w:.6f}",
            format_outcome(report.aeskr),
            f"{report.mean_skr:.4f}",
        )
    return table


def create_stability_table(rows: Sequence[Any], title: str = "Stability summary") -> Table:
    """Create a Rich table with full-period, max and min AE-SKR per subgroup."""
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Group", style="cyan", no_wrap=True)
    table.add_column("AE-SKR", justify="right", style="green")
    table.add_column("Max", justify="right")
    table.add_column("Min", justify="right")

    for row in rows:
        table.add_row(row.label, _rate(row.full), _rate(row.maximum), _rate(row.minimum))
    return table


def display_stats(stats: Dict[str, Any]) -> None:
    """Display statistics in a formatted way."""
    if _quiet_mode:
        return
    table = Table(show_header=False, box=None)
    table.add_column("Metric", style="cyan", no_wrap=True)
    table.add_column("Value", style="white")

    for key, value in stats.items():
        table.add_row(f"  {key}:", str(value))

    console.print(table)
