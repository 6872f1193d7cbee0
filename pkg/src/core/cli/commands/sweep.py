"""Sweep command for qnetctl CLI."""
from pathlib import Path
from typing import Optional

import typer

from src.core.cli.commands.network_helpers import fail, load_assignment, load_config
from src.core.cli.utils.display import display_stats, print_error, print_success
from src.core.cli.utils.output import OutputFormat, save_records, write_json
from src.core.cli.utils.validation import validate_grid_bounds, validate_output_dir
from src.core.pipeline.status import ExitCode, format_outcome
from src.core.sweep import (
    NoViablePointError,
    SweepPreconditionError,
    find_plateau,
    log_grid,
    run_sweep,
    select_operating_point,
)

SWEEP_FIELDS = ("reference_singles", "mu", "mean_skr", "min_skr", "w", "aeskr")


def sweep_command(
    config_path: Optional[Path] = None,
    assignment_path: Optional[Path] = None,
    grid_min: Optional[float] = None,
    grid_max: Optional[float] = None,
    grid_points: Optional[int] = None,
    n_jobs: Optional[int] = None,
    out_dir: Path = Path("."),
    format: OutputFormat = OutputFormat.csv,
) -> None:
    """
    Sweep the source brightness and pick the operating point with the best AE-SKR.

    \b
    Outputs:
        sweep.csv | sweep.json   mean, min and AE-SKR per reference singles rate
        operating_point.json     chosen point and AE-SKR plateau

    Exits 3 when every point leaves the network FAILED.
    """
    validate_grid_bounds(grid_min, grid_max)
    config = load_config(
        config_path, grid_min=grid_min, grid_max=grid_max, grid_points=grid_points, n_jobs=n_jobs
    )
    users = config.to_users()
    assignment = load_assignment(assignment_path, config, users)
    out_dir = validate_output_dir(out_dir)
    fn = config.to_score_function()

    try:
        values = log_grid(
            config.sweep.grid_min,
            config.sweep.grid_max,
            config.sweep.points_per_decade,
            config.sweep.points,
        )
        points = run_sweep(
            users,
            assignment,
            config.source.to_source(),
            config.to_receivers(),
            config.protocol.to_params(),
            values,
            config.grid.to_grid(),
            config.receiver.splitter,
            fn,
            reference_transmission=config.source.reference_transmission,
            n_jobs=config.sweep.n_jobs,
        )
    except SweepPreconditionError as e:
        fail(f"{e}", ExitCode.USAGE, e)

    sweep_path = out_dir / f"sweep.{format.value}"
    save_records([p.to_dict() for p in points], sweep_path, format, fieldnames=SWEEP_FIELDS)
    print_success(f"{len(points)} sweep points saved to [bold]{sweep_path}[/bold]")

    try:
        best = select_operating_point(points)
        first, last = find_plateau(points, config.sweep.plateau_tolerance)
    except NoViablePointError as e:
        print_error(f"{e}")
        raise typer.Exit(code=int(ExitCode.NO_VIABLE_POINT))

    write_json(
        {
            "operating_point": best.to_dict(),
            "plateau": {
                "tolerance": config.sweep.plateau_tolerance,
                "first_index": first,
                "last_index": last,
                "reference_singles_min": points[first].reference_singles,
                "reference_singles_max": points[last].reference_singles,
            },
        },
        out_dir / "operating_point.json",
    )

    display_stats({
        "Operating point": f"{best.reference_singles / 1e6:.4f} MHz reference singles",
        "AE-SKR": format_outcome(best.aeskr),
        "Mean SKR": f"{best.mean_skr:.4f} bps",
        "Min SKR": f"{best.min_skr:.4f} bps",
        "Plateau": (
            f"{points[first].reference_singles / 1e6:.4f} to "
            f"{points[last].reference_singles / 1e6:.4f} MHz ({last - first + 1} points)"
        ),
    })
