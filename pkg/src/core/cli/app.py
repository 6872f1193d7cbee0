"""qnetctl CLI Application (Typer-based)."""
import logging
from pathlib import Path
from typing import List, Optional

import typer
from typing_extensions import Annotated

from src.core.cli.utils.display import set_verbosity
from src.core.cli.utils.output import OutputFormat
from src.core.pipeline.status import ExitCode

# Exit code 2 belongs to infeasible plans; usage and parse errors exit 1.
UsageError = next(c for c in typer.BadParameter.__mro__ if c.__name__ == "UsageError")
UsageError.exit_code = int(ExitCode.USAGE)

# Create main Typer app
app = typer.Typer(
    name="qnetctl",
    help="qnetctl - Plan, simulate and score fully connected entanglement-based QKD networks",
    add_completion=True,
    no_args_is_help=True,
    rich_markup_mode="rich",
)


def version_callback(value: bool):
    """Display version and exit."""
    if value:
        from importlib.metadata import version, PackageNotFoundError
        try:
            app_version = version("qnetctl")
        except PackageNotFoundError:
            from src.core import __version__
            app_version = f"{__version__} (dev)"

        typer.echo(f"qnetctl version {app_version}")
        raise typer.Exit()


ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", help="Network config (JSON or YAML); default from QNETCTL_CONFIG"),
]
AssignmentOption = Annotated[
    Optional[Path],
    typer.Option("--assignment", "-a", help="assignment.json from 'qnetctl plan' (planned on the fly if omitted)"),
]
OutDirOption = Annotated[
    Path,
    typer.Option("--out-dir", "-o", help="Directory for output files"),
]


# Lazy import - commands are imported only when actually used
# This keeps --version and --help instant


@app.callback()
def main(
    version: Annotated[
        bool,
        typer.Option(
            "--version", "-V",
            help="Show version and exit",
            callback=version_callback,
            is_eager=True
        )
    ] = False,
    quiet: Annotated[
        bool,
        typer.Option(
            "--quiet", "-q",
            help="Quiet mode: errors only"
        )
    ] = False,
    verbose: Annotated[
        int,
        typer.Option(
            "--verbose", "-v",
            help="Increase verbosity (-v for info, -vv for debug with tracebacks)",
            count=True
        )
    ] = 0,
):
    """
    qnetctl - Plan, simulate and score fully connected entanglement-based QKD networks.

    One broadband pair source, wavelength channels routed to every user, and
    a failure-sensitive network score (AE-SKR) to rate the whole mesh.

    \b
    Quick Start:
        1. Plan a channel assignment:
           $ qnetctl plan --config network.json -o out/

        2. Simulate link rates and score the network:
           $ qnetctl simulate --config network.json -a out/assignment.json -o out/

        3. Score a list of measured key rates:
           $ qnetctl score rates.csv

        4. Find the best source brightness:
           $ qnetctl sweep --config network.json -a out/assignment.json -o out/

        5. Analyse a long-term SKR log:
           $ qnetctl stability skr_log.jsonl --mask cryo.json -o out/
    """
    if quiet and verbose > 0:
        raise typer.BadParameter("Cannot use --quiet with --verbose/--vv")

    logging_level = logging.WARNING
    if quiet:
        logging_level = logging.ERROR
    elif verbose >= 2:
        logging_level = logging.DEBUG
    elif verbose == 1:
        logging_level = logging.INFO

    logging.basicConfig(level=logging_level, force=True)
    set_verbosity(level=verbose, quiet=quiet)


# Register commands - imports happen inside each command function (lazy loading)
@app.command(name="plan", help="Assign logical channels so every pair of users shares a link")
def plan(
    config: ConfigOption = None,
    seed: Annotated[Optional[int], typer.Option("--seed", help="Seed of the local search")] = None,
    exact_limit: Annotated[
        Optional[int],
        typer.Option("--exact-limit", min=0, help="Largest network solved by exact search"),
    ] = None,
    out_dir: OutDirOption = Path("."),
    format: Annotated[
        OutputFormat, typer.Option("--format", "-f", help="Also write assignment.csv with csv")
    ] = OutputFormat.json,
):
    """Assign logical channels to users."""
    from src.core.cli.commands.plan import plan_command
    return plan_command(
        config_path=config, seed=seed, exact_limit=exact_limit, out_dir=out_dir, format=format
    )


@app.command(name="simulate", help="Compute per-link rates and the network AE-SKR")
def simulate(
    config: ConfigOption = None,
    assignment: AssignmentOption = None,
    out_dir: OutDirOption = Path("."),
    format: Annotated[
        OutputFormat, typer.Option("--format", "-f", help="Format of the rate table")
    ] = OutputFormat.csv,
    splitter: Annotated[
        Optional[str],
        typer.Option("--splitter", help="Splitter loss: 'exact' (1/4) or 'nominal' (6.00 dB)"),
    ] = None,
    report_only: Annotated[
        bool, typer.Option("--report-only", help="Exit 0 even when the network FAILED")
    ] = False,
):
    """Simulate every link of the network."""
    from src.core.cli.commands.simulate import simulate_command
    return simulate_command(
        config_path=config,
        assignment_path=assignment,
        out_dir=out_dir,
        format=format,
        splitter=splitter,
        report_only=report_only,
    )


@app.command(name="score", help="Score a file of link key rates")
def score(
    input_file: Path = typer.Argument(..., help="SKR list: CSV (skr_bps column), JSON or text"),
    config: ConfigOption = None,
    out_dir: Annotated[
        Optional[Path], typer.Option("--out-dir", "-o", help="Write score_report.json here")
    ] = None,
    format: Annotated[
        OutputFormat, typer.Option("--format", "-f", help="Format of the per-link scores")
    ] = OutputFormat.csv,
    report_only: Annotated[
        bool, typer.Option("--report-only", help="Exit 0 even when the network FAILED")
    ] = False,
):
    """Score a list of link SKRs."""
    from src.core.cli.commands.score import score_command
    return score_command(
        input_file=input_file,
        config_path=config,
        out_dir=out_dir,
        format=format,
        report_only=report_only,
    )


@app.command(name="sweep", help="Sweep the source brightness and pick the operating point")
def sweep(
    config: ConfigOption = None,
    assignment: AssignmentOption = None,
    grid_min: Annotated[
        Optional[float], typer.Option("--grid-min", help="Lowest reference singles rate (counts/s)")
    ] = None,
    grid_max: Annotated[
        Optional[float], typer.Option("--grid-max", help="Highest reference singles rate (counts/s)")
    ] = None,
    grid_points: Annotated[
        Optional[int], typer.Option("--grid-points", min=1, help="Total number of grid points")
    ] = None,
    n_jobs: Annotated[
        Optional[int], typer.Option("--jobs", "-j", help="Parallel workers (-1 for all cores)")
    ] = None,
    out_dir: OutDirOption = Path("."),
    format: Annotated[
        OutputFormat, typer.Option("--format", "-f", help="Format of the sweep table")
    ] = OutputFormat.csv,
):
    """Sweep the pair source brightness."""
    from src.core.cli.commands.sweep import sweep_command
    return sweep_command(
        config_path=config,
        assignment_path=assignment,
        grid_min=grid_min,
        grid_max=grid_max,
        grid_points=grid_points,
        n_jobs=n_jobs,
        out_dir=out_dir,
        format=format,
    )


@app.command(name="stability", help="Summarise a long-term SKR log and find the network failure")
def stability(
    trace_file: Path = typer.Argument(..., help="SKR log: JSON lines or CSV (timestamp, link, skr_bps)"),
    config: ConfigOption = None,
    mask: Annotated[
        Optional[List[Path]],
        typer.Option("--mask", "-m", help="Downtime intervals (JSON or CSV); repeatable"),
    ] = None,
    selector: Annotated[
        Optional[List[str]],
        typer.Option("--selector", "-s", help="all, user:<id>, scenario:<D-D|D-L|L-L>; repeatable"),
    ] = None,
    bin_width: Annotated[
        Optional[float], typer.Option("--bin-width", help="Bin width in seconds (default 600)")
    ] = None,
    origin: Annotated[
        Optional[float], typer.Option("--origin", help="Time of the first bin edge in seconds")
    ] = None,
    aggregation: Annotated[
        Optional[str], typer.Option("--aggregation", help="'means' or 'bin-scores'")
    ] = None,
    out_dir: OutDirOption = Path("."),
):
    """Analyse an SKR log."""
    from src.core.cli.commands.stability import stability_command
    return stability_command(
        trace_file=trace_file,
        config_path=config,
        mask_files=mask,
        selectors=selector,
        bin_width=bin_width,
        origin=origin,
        aggregation=aggregation,
        out_dir=out_dir,
    )


if __name__ == "__main__":
    app()
