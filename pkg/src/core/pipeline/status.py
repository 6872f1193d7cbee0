"""Status values shared by the planning, scoring and stability commands.

This module provides enums for exit codes, the network failure outcome and
the link quality bands used when scoring secret key rates.
"""

from enum import Enum, IntEnum
from typing import Union


class ExitCode(IntEnum):
    """Process exit codes of the qnetctl commands."""

    OK = 0
    USAGE = 1             # Usage or parse error
    INFEASIBLE_PLAN = 2   # Channel plan cannot reach a full mesh
    NO_VIABLE_POINT = 3   # Every sweep point failed
    FAILED_NETWORK = 4    # A link is below the fail threshold


class Outcome(str, Enum):
    """Non-numeric result of an AE-SKR evaluation."""

    FAILED = "FAILED"

    def __str__(self) -> str:
        return self.value


FAILED = Outcome.FAILED

AeSkr = Union[float, Outcome]
"""An AE-SKR in bits/s, or FAILED when the network score is zero."""


def is_failed(value: object) -> bool:
    """Check whether an AE-SKR value is the FAILED outcome."""
    return value is Outcome.FAILED or value == Outcome.FAILED.value


class QualityBand(str, Enum):
    """Named regions of the link score function."""

    UNACCEPTABLE = "unacceptable"
    ACCEPTABLE = "acceptable"
    OK = "ok"
    GOOD = "good"
    GREAT = "great"

    def is_failing(self) -> bool:
        """Check whether links in this band fail the network."""
        return self is QualityBand.UNACCEPTABLE


def format_outcome(value: AeSkr, precision: int = 4) -> str:
    """Format an AE-SKR with a status emoji."""
    if is_failed(value):
        return "❌ FAILED"
    return f"✅ {float(value):.{precision}f} bps"


def format_band(band: QualityBand) -> str:
    """Format a quality band with a colour emoji."""
    emoji_map = {
        QualityBand.UNACCEPTABLE: "🟦",
        QualityBand.ACCEPTABLE: "🟩",
        QualityBand.OK: "🟧",
        QualityBand.GOOD: "🟪",
        QualityBand.GREAT: "🟫",
    }
    return f"{emoji_map.get(band, '❓')} {band.value}"
