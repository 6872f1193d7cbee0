"""Validation utilities for CLI."""
from pathlib import Path
from typing import Optional

import typer


def validate_file_exists(file_path: Path) -> Path:
    """Validate that a file exists."""
    if not file_path.exists():
        raise typer.BadParameter(f"File does not exist: {file_path}")
    if not file_path.is_file():
        raise typer.BadParameter(f"Path is not a file: {file_path}")
    return file_path


def validate_output_dir(dir_path: Path) -> Path:
    """Create the output directory if needed; refuse paths that are files."""
    if dir_path.exists() and not dir_path.is_dir():
        raise typer.BadParameter(f"Path is not a directory: {dir_path}")
    dir_path.mkdir(parents=True, exist_ok=True)
    return dir_path


def validate_positive(value: Optional[float], name: str) -> Optional[float]:
    """Validate an optional numeric option is > 0."""
    if value is not None and value <= 0:
        raise typer.BadParameter(f"{name} must be > 0, got {value}")
    return value


def validate_grid_bounds(grid_min: Optional[float], grid_max: Optional[float]) -> None:
    """Validate sweep grid bounds when both are given."""
    validate_positive(grid_min, "--grid-min")
    validate_positive(grid_max, "--grid-max")
    if grid_min is not None and grid_max is not None and grid_max < grid_min:
        raise typer.BadParameter(f"--grid-max ({grid_max}) is below --grid-min ({grid_min})")
