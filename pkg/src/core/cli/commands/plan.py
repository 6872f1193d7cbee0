"""Plan command for qnetctl CLI."""
from pathlib import Path
from typing import Optional

import typer

from src.core.cli.commands.network_helpers import fail, load_config, plan_from_config
from src.core.cli.utils.display import (
    create_assignment_table,
    display_stats,
    print_error,
    print_success,
    print_table,
)
from src.core.cli.utils.output import OutputFormat, save_records_csv, write_json
from src.core.cli.utils.validation import validate_output_dir
from src.core.pipeline.status import ExitCode
from src.core.topology import InfeasibleAssignmentError, assignment_table, verify_full_mesh


def plan_command(
    config_path: Optional[Path] = None,
    seed: Optional[int] = None,
    exact_limit: Optional[int] = None,
    out_dir: Path = Path("."),
    format: OutputFormat = OutputFormat.json,
) -> None:
    """
    Assign logical channels to users so that every pair shares a link.

    \b
    Outputs:
        assignment.json   grants, objective and verification report
        assignment.csv    per-user channel table (--format csv)

    Exits 2 with the uncovered links when no full mesh fits the grid.
    """
    config = load_config(config_path, seed=seed, exact_limit=exact_limit)
    users = config.to_users()
    if len(users) < 2:
        fail("The network needs at least 2 users", ExitCode.USAGE)
    out_dir = validate_output_dir(out_dir)

    try:
        assignment = plan_from_config(config, users)
    except InfeasibleAssignmentError as e:
        print_error(f"{e}")
        for link in e.uncovered:
            print_error(f"  uncovered: {link.id}")
        write_json(
            {
                "assignment": e.partial.to_dict(),
                "uncovered": [link.id for link in e.uncovered],
                "seed": config.solver.seed,
            },
            out_dir / "assignment_partial.json",
        )
        raise typer.Exit(code=int(ExitCode.INFEASIBLE_PLAN))

    report = verify_full_mesh(assignment, users)
    max_copies, pairs_used = assignment.objective()
    write_json(
        {
            "assignment": assignment.to_dict(),
            "objective": {
                "max_channels_per_user": max_copies,
                "pairs_used": pairs_used,
                "split_pairs_used": len(assignment.split_pairs_used()),
            },
            "verification": report.to_dict(),
            "seed": config.solver.seed,
        },
        out_dir / "assignment.json",
    )

    rows = assignment_table(assignment, users)
    if format == OutputFormat.csv:
        save_records_csv(rows, out_dir / "assignment.csv")

    print_table(create_assignment_table(rows))
    display_stats({
        "Users": len(users),
        "Pairs used": pairs_used,
        "Split pairs": len(assignment.split_pairs_used()),
        "Max channels/user": max_copies,
        "Coverage": report.summary(),
    })

    if not report.passed:
        fail(f"Plan does not cover every link: {report.summary()}", ExitCode.INFEASIBLE_PLAN)
    print_success(f"Assignment saved to [bold]{out_dir / 'assignment.json'}[/bold]")
