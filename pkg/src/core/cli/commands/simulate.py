"""Simulate command for qnetctl CLI."""
from pathlib import Path
from typing import Optional

from src.core.cli.commands.network_helpers import (
    fail,
    failed_exit,
    load_assignment,
    load_config,
)
from src.core.cli.utils.display import (
    create_rates_table,
    create_score_table,
    display_stats,
    print_success,
    print_table,
    print_warning,
)
from src.core.cli.utils.output import OutputFormat, save_records, write_json
from src.core.cli.utils.validation import validate_output_dir
from src.core.physics import NoChannelError, simulate_network
from src.core.pipeline.status import ExitCode, format_outcome
from src.core.scoring import score_links, table_reports

RATE_FIELDS = (
    "link", "scenario", "pairs", "singles_a", "singles_b", "true_coincidences",
    "accidentals", "qber", "sifted_rate", "skr", "score", "band",
)


def simulate_command(
    config_path: Optional[Path] = None,
    assignment_path: Optional[Path] = None,
    out_dir: Path = Path("."),
    format: OutputFormat = OutputFormat.csv,
    splitter: Optional[str] = None,
    report_only: bool = False,
) -> None:
    """
    Compute coincidences, QBER and SKR of every link between active users.

    \b
    Outputs:
        rates.csv | rates.json   per-link rate table
        score_report.json        network W, AE-SKR and subgroup reports
    """
    config = load_config(config_path, splitter=splitter, report_only=report_only)
    users = config.to_users()
    assignment = load_assignment(assignment_path, config, users)
    out_dir = validate_output_dir(out_dir)
    fn = config.to_score_function()

    try:
        rates = simulate_network(
            users,
            assignment,
            config.source.to_source(),
            config.to_receivers(),
            config.protocol.to_params(),
            config.grid.to_grid(),
            config.receiver.splitter,
        )
    except NoChannelError as e:
        fail(f"{e}", ExitCode.INFEASIBLE_PLAN, e)

    if not rates:
        fail("No links between active users to simulate", ExitCode.USAGE)

    ordered = [rates[link] for link in sorted(rates)]
    skrs = {r.link: r.skr for r in ordered}
    network = score_links(skrs, fn)
    bands = [fn.band(r.skr) for r in ordered]

    records = []
    for rate, link_score, band in zip(ordered, network.links, bands):
        record = rate.to_dict()
        record.update(score=link_score.score, band=band.value)
        records.append(record)
    rates_path = out_dir / f"rates.{format.value}"
    save_records(records, rates_path, format, fieldnames=RATE_FIELDS)

    groups = table_reports(skrs, users, fn)
    write_json(
        {
            "network": network.to_dict(),
            "groups": [report.to_dict(include_links=False) for report in groups],
            "failing_links": [ls.link for ls in network.failing_links(fn)],
            "fail_threshold": fn.fail_threshold,
            "source_pair_rate": config.source.mu,
        },
        out_dir / "score_report.json",
    )

    print_table(create_rates_table(ordered, bands))
    print_table(create_score_table(groups))
    display_stats({
        "Links": len(ordered),
        "Network score W": f"{network.w:.6f}",
        "AE-SKR": format_outcome(network.aeskr),
        "Mean SKR": f"{network.mean_skr:.4f} bps",
        "Min SKR": f"{network.min_skr:.4f} bps",
    })
    print_success(f"Rates saved to [bold]{rates_path}[/bold]")

    if network.failed:
        failing = ", ".join(ls.link for ls in network.failing_links(fn))
        print_warning(f"Network FAILED: link(s) below {fn.fail_threshold} bps: {failing}")
        failed_exit(config)
