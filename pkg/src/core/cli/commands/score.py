"""Score command for qnetctl CLI."""
from pathlib import Path
from typing import Optional

from src.core.cli.commands.network_helpers import fail, failed_exit, load_config, score_records
from src.core.cli.utils.display import display_stats, print_success, print_warning
from src.core.cli.utils.output import OutputFormat, save_records, write_json
from src.core.cli.utils.validation import validate_file_exists, validate_output_dir
from src.core.pipeline.status import ExitCode, format_band, format_outcome
from src.core.scoring import ScoreDomainError, score_links


def score_command(
    input_file: Path,
    config_path: Optional[Path] = None,
    out_dir: Optional[Path] = None,
    format: OutputFormat = OutputFormat.csv,
    report_only: bool = False,
) -> None:
    """
    Score a list of link SKRs and print the network AE-SKR.

    Only the scoring section of the configuration is used.
    """
    validate_file_exists(input_file)
    config = load_config(config_path, report_only=report_only)
    fn = config.to_score_function()

    from src.core.io import read_skr_values

    try:
        skrs = read_skr_values(input_file)
        report = score_links(skrs, fn, label=input_file.stem)
    except (ScoreDomainError, ValueError) as e:
        fail(f"Cannot score {input_file}: {e}", ExitCode.USAGE, e)

    display_stats({
        "Links": len(report.links),
        "Network score W": f"{report.w:.6f}",
        "AE-SKR": format_outcome(report.aeskr),
        "Band": format_band(fn.band(0.0 if report.failed else float(report.aeskr))),
        "Mean SKR": f"{report.mean_skr:.4f} bps",
        "Min SKR": f"{report.min_skr:.4f} bps",
    })

    if out_dir is not None:
        out_dir = validate_output_dir(out_dir)
        write_json(report.to_dict(), out_dir / "score_report.json")
        save_records(score_records(skrs, fn), out_dir / f"scores.{format.value}", format)
        print_success(f"Score report saved to [bold]{out_dir / 'score_report.json'}[/bold]")

    if report.failed:
        failing = ", ".join(ls.link for ls in report.failing_links(fn))
        print_warning(f"Network FAILED: link(s) below {fn.fail_threshold} bps: {failing}")
        failed_exit(config)
