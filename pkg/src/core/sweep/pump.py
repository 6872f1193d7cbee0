"""
Pump power sweep.

The source brightness sets every link's SKR at once: more pairs raise the
true coincidences linearly but the accidentals quadratically, so each link
has its own optimum. The sweep scans the corrected reference singles rate,
records mean, min and AE-SKR over all links, and picks the operating point
with the best AE-SKR.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from src.core.grid import DEFAULT_GRID, GridConfig
from src.core.physics import (
    ProtocolParams,
    Receivers,
    ReceiverModel,
    SourceModel,
    SplitterMode,
    simulate_network,
)
from src.core.pipeline.status import AeSkr, is_failed
from src.core.scoring import DEFAULT_SCORE_FUNCTION, ScoreFunction, network_aeskr, network_score
from src.core.topology import ChannelAssignment, User, verify_full_mesh

LOGGER = logging.getLogger(__name__)

DEFAULT_POINTS_PER_DECADE = 31


class SweepPreconditionError(ValueError):
    """Sweep asked for on an unverified assignment or an empty grid."""
    pass


class NoViablePointError(RuntimeError):
    """Every sweep point left the network FAILED."""
    pass


@dataclass(frozen=True)
class SweepPoint:
    """Network figures at one source brightness."""

    reference_singles: float
    mu: float
    mean_skr: float
    min_skr: float
    aeskr: AeSkr
    w: float = 0.0

    @property
    def failed(self) -> bool:
        return is_failed(self.aeskr)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["aeskr"] = str(self.aeskr) if self.failed else self.aeskr
        return data


def log_grid(
    start: float,
    stop: float,
    points_per_decade: int = DEFAULT_POINTS_PER_DECADE,
    points: Optional[int] = None,
) -> np.ndarray:
    """
    Log-spaced grid from ``start`` to ``stop`` inclusive.

    ``points`` fixes the total number of points; otherwise the count follows
    from ``points_per_decade``.
    """
    if start <= 0 or stop <= 0:
        raise SweepPreconditionError("grid bounds must be > 0")
    if stop < start:
        raise SweepPreconditionError(f"grid max {stop} is below grid min {start}")
    if points is None:
        decades = math.log10(stop / start)
        points = max(1, int(round(decades * points_per_decade)) + 1)
    if points < 1:
        raise SweepPreconditionError("grid needs at least one point")
    if points == 1:
        return np.array([float(start)])
    return np.logspace(math.log10(start), math.log10(stop), points)


def evaluate_point(
    reference_singles: float,
    users: Sequence[User],
    assignment: ChannelAssignment,
    source: SourceModel,
    receivers: Receivers | ReceiverModel,
    params: ProtocolParams,
    grid: GridConfig = DEFAULT_GRID,
    splitter: SplitterMode = SplitterMode.EXACT,
    fn: ScoreFunction = DEFAULT_SCORE_FUNCTION,
    reference_transmission: float = 1.0,
) -> SweepPoint:
    mu = reference_singles / reference_transmission
    rates = simulate_network(
        users, assignment, source.with_rate(mu), receivers, params, grid, splitter
    )
    skrs = np.array([r.skr for r in rates.values()], dtype=float)
    return SweepPoint(
        reference_singles=float(reference_singles),
        mu=float(mu),
        mean_skr=float(skrs.mean()),
        min_skr=float(skrs.min()),
        aeskr=network_aeskr(skrs, fn),
        w=network_score(skrs, fn),
    )


def run_sweep(
    users: Sequence[User],
    assignment: ChannelAssignment,
    source: SourceModel,
    receivers: Receivers | ReceiverModel,
    params: ProtocolParams,
    grid_values: Sequence[float],
    grid: GridConfig = DEFAULT_GRID,
    splitter: SplitterMode = SplitterMode.EXACT,
    fn: ScoreFunction = DEFAULT_SCORE_FUNCTION,
    reference_transmission: float = 1.0,
    n_jobs: int = 1,
) -> List[SweepPoint]:
    """
    Evaluate the network at every reference singles rate of the grid.

    Results follow grid order whatever ``n_jobs`` is.

    Raises:
        SweepPreconditionError: On an empty grid or an assignment that does
            not fully connect the active users
    """
    values = [float(v) for v in grid_values]
    if not values:
        raise SweepPreconditionError("Sweep grid is empty")
    if reference_transmission <= 0:
        raise SweepPreconditionError("reference_transmission must be > 0")
    active = [u for u in users if u.is_active]
    if len(active) < 2:
        raise SweepPreconditionError("Sweep needs at least 2 active users")
    report = verify_full_mesh(assignment, active)
    if not report.passed:
        raise SweepPreconditionError(f"Assignment is not a full mesh: {report.summary()}")

    LOGGER.info("Sweeping %d points from %.4g to %.4g counts/s", len(values), values[0], values[-1])
    points = Parallel(n_jobs=n_jobs)(
        delayed(evaluate_point)(
            value, users, assignment, source, receivers, params, grid, splitter, fn,
            reference_transmission,
        )
        for value in values
    )
    return list(points)


def select_operating_point(points: Sequence[SweepPoint]) -> SweepPoint:
    """
    Point with the highest AE-SKR; ties go to the lower singles rate.

    Raises:
        NoViablePointError: If every point is FAILED
    """
    viable = [p for p in points if not p.failed]
    if not viable:
        raise NoViablePointError(f"All {len(points)} sweep points leave the network FAILED")
    best = min(viable, key=lambda p: (-float(p.aeskr), p.reference_singles))
    LOGGER.info(
        "Operating point: %.4g counts/s, AE-SKR %.4g bps", best.reference_singles, best.aeskr
    )
    return best


def find_plateau(points: Sequence[SweepPoint], tolerance: float = 0.1) -> Tuple[int, int]:
    """
    Contiguous index range around the AE-SKR maximum staying within
    ``tolerance`` of it.

    Returns:
        (first, last) indices, inclusive
    """
    best = select_operating_point(points)
    peak = float(best.aeskr)
    floor = (1.0 - tolerance) * peak
    centre = list(points).index(best)

    def inside(i: int) -> bool:
        return not points[i].failed and float(points[i].aeskr) >= floor

    first = centre
    while first > 0 and inside(first - 1):
        first -= 1
    last = centre
    while last < len(points) - 1 and inside(last + 1):
        last += 1
    return first, last
