"""Helper functions shared by the network commands.

Each function has a single responsibility: loading the configuration,
obtaining an assignment, or turning a domain error into an exit code.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional

import typer

from src.core.cli.utils.display import flags_set_verbosity, print_error, print_info
from src.core.config import NetworkConfig, get_network_config
from src.core.pipeline.status import ExitCode
from src.core.scoring import ScoreFunction
from src.core.topology import ChannelAssignment, InfeasibleAssignmentError, User, solve_assignment

logger = logging.getLogger(__name__)


def fail(message: str, code: ExitCode, error: Optional[BaseException] = None) -> NoReturn:
    """
    Report an error and exit.

    The traceback is only logged at DEBUG level; otherwise a single line is shown.
    """
    if error is not None and logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"{message}", exc_info=error)
    print_error(message)
    raise typer.Exit(code=int(code))


def load_config(config_path: Optional[Path], **overrides: Any) -> NetworkConfig:
    """
    Load the network configuration and apply CLI overrides.

    Without ``--config`` the global configuration is used
    (QNETCTL_CONFIG, ~/.qnetctl/config.json, then the built-in network).
    """
    try:
        if config_path is not None:
            config = NetworkConfig.from_file(config_path)
            config.merge_from_env()
        else:
            config = get_network_config(reload=True)
        config.merge_from_cli_args(**overrides)
    except (FileNotFoundError, ValueError) as e:
        fail(f"Invalid configuration: {e}", ExitCode.USAGE, e)
    if not flags_set_verbosity():
        # -q/-v/-vv win over the configured level
        logging.getLogger().setLevel(config.log_level)
    return config


def plan_from_config(config: NetworkConfig, users: List[User]) -> ChannelAssignment:
    """Run the solver with the grid and solver sections of ``config``."""
    return solve_assignment(
        users,
        available=config.grid.pairs(),
        excluded=config.grid.excluded,
        grid=config.grid.to_grid(),
        seed=config.solver.seed,
        exact_limit=config.solver.exact_limit,
    )


def load_assignment(
    assignment_path: Optional[Path], config: NetworkConfig, users: List[User]
) -> ChannelAssignment:
    """Read ``--assignment`` or plan one on the fly when it is omitted."""
    if assignment_path is None:
        print_info("No --assignment given, planning one from the configuration")
        try:
            return plan_from_config(config, users)
        except InfeasibleAssignmentError as e:
            fail(f"{e}", ExitCode.INFEASIBLE_PLAN, e)

    from src.core.io import read_assignment

    try:
        return read_assignment(assignment_path, config.grid.to_grid())
    except (FileNotFoundError, ValueError, KeyError) as e:
        fail(f"Cannot read assignment {assignment_path}: {e}", ExitCode.USAGE, e)


def failed_exit(config: NetworkConfig) -> None:
    """Exit with the configured code for a FAILED network (no-op when it is 0)."""
    code = config.scoring.failed_exit_code
    if code:
        raise typer.Exit(code=code)


def score_records(skrs: Dict[str, float], fn: ScoreFunction) -> List[Dict[str, Any]]:
    """Flat ``(link, skr_bps, score, band)`` rows for CSV output."""
    scores = fn.scores(list(skrs.values()))
    return [
        {"link": link, "skr_bps": skr, "score": float(score), "band": fn.band(skr).value}
        for (link, skr), score in zip(skrs.items(), scores)
    ]
