"""Stability command for qnetctl CLI."""
from pathlib import Path
from typing import List, Optional

from src.core.cli.commands.network_helpers import fail, load_config
from src.core.cli.utils.display import (
    create_stability_table,
    display_stats,
    print_info,
    print_success,
    print_table,
    print_warning,
)
from src.core.cli.utils.output import write_json
from src.core.cli.utils.validation import validate_file_exists, validate_output_dir
from src.core.pipeline.status import ExitCode
from src.core.scoring import Selector, table_selectors
from src.core.stability import (
    SECONDS_PER_DAY,
    EmptyWindowError,
    ingest,
    selector_series,
    summarize,
)


def stability_command(
    trace_file: Path,
    config_path: Optional[Path] = None,
    mask_files: Optional[List[Path]] = None,
    selectors: Optional[List[str]] = None,
    bin_width: Optional[float] = None,
    origin: Optional[float] = None,
    aggregation: Optional[str] = None,
    out_dir: Path = Path("."),
) -> None:
    """
    Bin a time-stamped SKR log, find the network failure and summarise AE-SKR.

    \b
    Outputs:
        stability_summary.json   full-period, max and min AE-SKR per subgroup
        series_<group>.csv       per-bin W and AE-SKR for plotting
    """
    from src.core.io import iter_trace_records, read_masks

    validate_file_exists(trace_file)
    config = load_config(config_path, bin_width=bin_width, origin=origin, aggregation=aggregation)
    users = config.to_users()
    fn = config.to_score_function()
    out_dir = validate_output_dir(out_dir)

    masks = config.stability.to_masks()
    try:
        for mask_file in mask_files or []:
            validate_file_exists(mask_file)
            masks += read_masks(mask_file)
        chosen = [Selector.parse(text) for text in selectors] if selectors else table_selectors(users)
    except ValueError as e:
        fail(f"{e}", ExitCode.USAGE, e)

    try:
        trace = ingest(
            iter_trace_records(trace_file),
            bin_width=config.stability.bin_width,
            origin=config.stability.origin,
            masks=masks,
            reference_link=config.stability.reference_link,
        )
    except ValueError as e:
        fail(f"Cannot read {trace_file}: {e}", ExitCode.USAGE, e)
    if trace.rejected:
        print_warning(f"{trace.rejected} malformed record(s) skipped")

    try:
        summary = summarize(
            trace,
            users,
            chosen,
            fn,
            aggregation=config.stability.aggregation,
            reference_transmission=config.source.reference_transmission,
        )
    except EmptyWindowError as e:
        fail(f"{e}", ExitCode.USAGE, e)

    write_json(summary.to_dict(), out_dir / "stability_summary.json")

    labels = {row.label for row in summary.rows}
    for selector in chosen:
        if selector.label not in labels:
            continue
        series = selector_series(trace, selector, users, fn)
        series.to_csv(out_dir / f"series_{selector.slug}.csv", index=False)

    print_table(create_stability_table(summary.rows))
    stats = {
        "Window": (
            f"{summary.window_start / SECONDS_PER_DAY:.2f} to {summary.window_end / SECONDS_PER_DAY:.2f} days "
            f"({summary.window_bins} bins)"
        ),
        "Masked bins": summary.masked_bins,
        "Aggregation": summary.aggregation.value,
    }
    if summary.reference is not None:
        stats["Reference counts"] = f"{summary.reference.mean:.4g} /s (mean, corrected)"
    display_stats(stats)

    if summary.failure is not None:
        print_warning(
            f"Network failed at {summary.failure.days:.3f} days "
            f"(t = {summary.failure.time:.0f} s): {summary.failure.link} at "
            f"{summary.failure.skr:.4g} bps"
        )
    else:
        print_info("No link dropped below the fail threshold")
    print_success(f"Summary saved to [bold]{out_dir / 'stability_summary.json'}[/bold]")
