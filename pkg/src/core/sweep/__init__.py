"""Pump power sweep and operating point selection."""

from src.core.sweep.pump import (
    DEFAULT_POINTS_PER_DECADE,
    NoViablePointError,
    SweepPoint,
    SweepPreconditionError,
    evaluate_point,
    find_plateau,
    log_grid,
    run_sweep,
    select_operating_point,
)

__all__ = [
    "DEFAULT_POINTS_PER_DECADE",
    "NoViablePointError",
    "SweepPoint",
    "SweepPreconditionError",
    "evaluate_point",
    "find_plateau",
    "log_grid",
    "run_sweep",
    "select_operating_point",
]
