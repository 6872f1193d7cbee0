"""Status values shared across qnetctl commands.

This module provides:
- Process exit codes
- The FAILED outcome of an AE-SKR evaluation
- Link quality bands and their display helpers
"""

from src.core.pipeline.status import (
    FAILED,
    AeSkr,
    ExitCode,
    Outcome,
    QualityBand,
    format_band,
    format_outcome,
    is_failed,
)

__all__ = [
    "FAILED",
    "AeSkr",
    "ExitCode",
    "Outcome",
    "QualityBand",
    "format_band",
    "format_outcome",
    "is_failed",
]
