"""
Reference values for the 12-user metropolitan deployment.

Losses are the measured bounce-back (round trip) figures of the deployed
users; visibilities are the average polarisation visibilities measured at
commissioning. Chloe and Kevin did not pass commissioning and are planned
for but not scored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class UserDefaults:
    id: str
    bounce_back_loss_db: Optional[float]
    """None for users connected locally"""
    visibility: float
    status: str = "active"


TESTBED_USERS: Tuple[UserDefaults, ...] = (
    UserDefaults("alice", 1.45, 0.99505),
    UserDefaults("bob", 1.8, 0.99555),
    UserDefaults("chloe", 2.74, 0.99213, status="failed"),
    UserDefaults("dave", 3.24, 0.98747),
    UserDefaults("faye", None, 0.99407),
    UserDefaults("gopi", None, 0.99552),
    UserDefaults("heidi", None, 0.99533),
    UserDefaults("ivan", None, 0.99385),
    UserDefaults("jo", None, 0.99715),
    UserDefaults("kevin", None, 0.97, status="failed"),
    UserDefaults("lea", None, 0.99347),
    UserDefaults("marek", None, 0.99564),
)

FAILED_USERS: Tuple[str, ...] = tuple(u.id for u in TESTBED_USERS if u.status == "failed")


@dataclass(frozen=True)
class GridDefaults:
    first_itu: int = 19
    last_itu: int = 49
    center_itu: int = 34
    split_threshold: int = 6
    excluded: Tuple[int, ...] = (3, -3)  # reference channel pair
    max_pair: int = 15


@dataclass(frozen=True)
class DetectorDefaults:
    """Model detectors; deployed users got the better units."""

    local_efficiency: float = 0.15
    deployed_efficiency: float = 0.25
    local_dark_count_rate: float = 400.0
    deployed_dark_count_rate: float = 150.0
    internal_loss_db: float = 3.0


@dataclass(frozen=True)
class StabilityDefaults:
    bin_width: float = 600.0
    reference_link: str = "reference"
    setup_window: Tuple[float, float] = (1.5 * 86400.0, 2.5 * 86400.0)
    failure_days: float = 10.8
    failure_skr: float = 0.096


REFERENCE_SINGLES = 4.5e5
FAIL_THRESHOLD = 0.1
FULL_NETWORK_AESKR = 3.3818

grid = GridDefaults()
detectors = DetectorDefaults()
stability = StabilityDefaults()


__all__ = [
    "FAILED_USERS",
    "FAIL_THRESHOLD",
    "FULL_NETWORK_AESKR",
    "TESTBED_USERS",
    "REFERENCE_SINGLES",
    "DetectorDefaults",
    "GridDefaults",
    "StabilityDefaults",
    "UserDefaults",
    "detectors",
    "grid",
    "stability",
]
