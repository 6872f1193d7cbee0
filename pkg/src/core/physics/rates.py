"""
Per-link singles, coincidences, QBER and asymptotic BBM92 key rates.

Every user holds copies of logical channels; a copy reaches the detectors
with transmission

    T = splitter x 10^(-(fibre + internal loss) / 10) x detector efficiency

where the splitter factor applies only to split channels. Coincidences
between conjugate copies are true pairs; uncorrelated singles landing in the
same window are accidentals and carry a QBER of one half.
"""

from __future__ import annotations

import logging
import math
from typing import Dict, Mapping, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import bisect
from scipy.special import entr

from src.core.grid import DEFAULT_GRID, GridConfig, LogicalChannel, is_split
from src.core.physics.models import (
    LinkRates,
    NoChannelError,
    ProtocolParams,
    ReceiverModel,
    Receivers,
    SourceModel,
    SplitterMode,
    UndefinedQberError,
)
from src.core.topology import (
    ChannelAssignment,
    Link,
    User,
    scenario_of,
    served_links,
    users_by_id,
)

LOGGER = logging.getLogger(__name__)

ReceiverArg = Union[ReceiverModel, Receivers]


def db_to_fraction(loss_db: float) -> float:
    return 10 ** (-loss_db / 10)


def _receiver(receivers: ReceiverArg, user_id: str) -> ReceiverModel:
    if isinstance(receivers, ReceiverModel):
        return receivers
    return receivers.for_user(user_id)


def channel_transmission(
    user: User,
    lc: Union[LogicalChannel, int],
    receiver: ReceiverModel,
    grid: GridConfig = DEFAULT_GRID,
    splitter: SplitterMode = SplitterMode.EXACT,
) -> float:
    """Probability that a photon on ``lc`` is detected by ``user``."""
    transmission = db_to_fraction(user.one_way_loss_db + receiver.internal_loss_db)
    if is_split(lc, grid):
        transmission *= splitter.factor
    return transmission * receiver.detector_efficiency


def singles_rate(
    user: User,
    assignment: ChannelAssignment,
    source: SourceModel,
    receiver: ReceiverModel,
    grid: GridConfig = DEFAULT_GRID,
    splitter: SplitterMode = SplitterMode.EXACT,
) -> float:
    """Detected singles of a user over all channels it holds, plus dark counts."""
    total = receiver.dark_count_rate
    for channel in assignment.channels_of(user.id):
        total += source.rate(abs(channel)) * channel_transmission(
            user, channel, receiver, grid, splitter
        )
    return total


def coincidence_rates(
    link: Link,
    users: Mapping[str, User],
    assignment: ChannelAssignment,
    source: SourceModel,
    receivers: ReceiverArg,
    params: ProtocolParams = ProtocolParams(),
    grid: GridConfig = DEFAULT_GRID,
    splitter: SplitterMode = SplitterMode.EXACT,
) -> Tuple[float, float]:
    """
    True and accidental coincidence rates of a link.

    Raises:
        NoChannelError: If no conjugate pair serves the link
    """
    user_a, user_b = users[link.a], users[link.b]
    recv_a, recv_b = _receiver(receivers, link.a), _receiver(receivers, link.b)
    held_a = {c.lc for c in assignment.channels_of(link.a)}
    held_b = {c.lc for c in assignment.channels_of(link.b)}

    true_c = 0.0
    served = False
    for lc in sorted(held_a):
        if -lc in held_b:
            served = True
            true_c += (
                source.rate(abs(lc))
                * channel_transmission(user_a, lc, recv_a, grid, splitter)
                * channel_transmission(user_b, -lc, recv_b, grid, splitter)
            )
    if not served:
        raise NoChannelError(f"Link {link.id} is not served by any conjugate pair")

    accidentals = 0.0
    if params.include_accidentals:
        s_a = singles_rate(user_a, assignment, source, recv_a, grid, splitter)
        s_b = singles_rate(user_b, assignment, source, recv_b, grid, splitter)
        accidentals = s_a * s_b * params.coincidence_window
    return true_c, accidentals


def visibility_to_qber(visibility: float) -> float:
    """Intrinsic error of a polarisation visibility."""
    if not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must be in [0, 1], got {visibility}")
    return (1.0 - visibility) / 2.0


def link_intrinsic_error(visibility_a: float, visibility_b: float) -> float:
    """Intrinsic error of a link whose ends see visibilities V_a and V_b."""
    return visibility_to_qber(visibility_a * visibility_b)


def link_qber(true_c: float, accidentals: float, intrinsic_error: float) -> float:
    """Mixture of the intrinsic error on true pairs and 1/2 on accidentals."""
    total = true_c + accidentals
    if total <= 0:
        raise UndefinedQberError("QBER undefined with no coincidences")
    return (intrinsic_error * true_c + 0.5 * accidentals) / total


def binary_entropy(q):
    """h2(q) in bits; works on scalars and arrays."""
    q = np.asarray(q, dtype=float)
    if np.any((q < 0) | (q > 1)):
        raise ValueError("binary entropy needs q in [0, 1]")
    h = (entr(q) + entr(1.0 - q)) / math.log(2)
    return float(h) if h.ndim == 0 else h


def key_fraction(qber: float, params: ProtocolParams = ProtocolParams()) -> float:
    h = binary_entropy(qber)
    return 1.0 - params.ec_efficiency * h - h


def bbm92_skr(
    true_c: float, accidentals: float, qber: float, params: ProtocolParams = ProtocolParams()
) -> float:
    """Asymptotic BBM92 secret key rate, clamped at zero."""
    sifted = params.sifting_factor * (true_c + accidentals)
    return sifted * max(0.0, key_fraction(qber, params))


def qber_threshold(params: ProtocolParams = ProtocolParams(), xtol: float = 1e-12) -> float:
    """Largest QBER with a positive key fraction."""
    return float(bisect(lambda q: key_fraction(q, params), 1e-12, 0.5, xtol=xtol))


def compute_link_rates(
    link: Link,
    users: Mapping[str, User],
    assignment: ChannelAssignment,
    source: SourceModel,
    receivers: ReceiverArg,
    params: ProtocolParams = ProtocolParams(),
    grid: GridConfig = DEFAULT_GRID,
    splitter: SplitterMode = SplitterMode.EXACT,
) -> LinkRates:
    """Full rate breakdown of one link."""
    recv_a, recv_b = _receiver(receivers, link.a), _receiver(receivers, link.b)
    true_c, accidentals = coincidence_rates(
        link, users, assignment, source, receivers, params, grid, splitter
    )
    intrinsic = link_intrinsic_error(recv_a.visibility, recv_b.visibility)
    try:
        qber = link_qber(true_c, accidentals, intrinsic)
    except UndefinedQberError:
        LOGGER.debug("Link %s has no coincidences, reporting QBER 0.5", link.id)
        qber = 0.5

    held_a = {c.lc for c in assignment.channels_of(link.a)}
    held_b = {c.lc for c in assignment.channels_of(link.b)}
    pairs = tuple(sorted({abs(lc) for lc in held_a if -lc in held_b}))

    return LinkRates(
        link=link.id,
        singles_a=singles_rate(users[link.a], assignment, source, recv_a, grid, splitter),
        singles_b=singles_rate(users[link.b], assignment, source, recv_b, grid, splitter),
        true_coincidences=true_c,
        accidentals=accidentals,
        qber=qber,
        sifted_rate=params.sifting_factor * (true_c + accidentals),
        skr=bbm92_skr(true_c, accidentals, qber, params),
        pairs=pairs,
        scenario=scenario_of(link, users).value,
    )


def simulate_network(
    users: Sequence[User],
    assignment: ChannelAssignment,
    source: SourceModel,
    receivers: ReceiverArg,
    params: ProtocolParams = ProtocolParams(),
    grid: GridConfig = DEFAULT_GRID,
    splitter: SplitterMode = SplitterMode.EXACT,
) -> Dict[Link, LinkRates]:
    """
    Rates of every link between active users.

    Failed users keep their planned channels but get no links.
    """
    index = users_by_id(users)
    active = sorted(u.id for u in users if u.is_active)
    served = served_links(assignment)
    results: Dict[Link, LinkRates] = {}
    for i, a in enumerate(active):
        for b in active[i + 1:]:
            link = Link(a, b)
            if link not in served:
                raise NoChannelError(f"Link {link.id} is not served by any conjugate pair")
            results[link] = compute_link_rates(
                link, index, assignment, source, receivers, params, grid, splitter
            )
    LOGGER.info(
        "Simulated %d links at %.4g pairs/s per channel", len(results), source.pair_rate_per_channel
    )
    return results
