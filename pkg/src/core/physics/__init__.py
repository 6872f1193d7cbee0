"""Physical-layer rate model for entanglement-based QKD links."""

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
from src.core.physics.rates import (
    bbm92_skr,
    binary_entropy,
    channel_transmission,
    coincidence_rates,
    compute_link_rates,
    db_to_fraction,
    key_fraction,
    link_intrinsic_error,
    link_qber,
    qber_threshold,
    simulate_network,
    singles_rate,
    visibility_to_qber,
)

__all__ = [
    "LinkRates",
    "NoChannelError",
    "ProtocolParams",
    "ReceiverModel",
    "Receivers",
    "SourceModel",
    "SplitterMode",
    "UndefinedQberError",
    "bbm92_skr",
    "binary_entropy",
    "channel_transmission",
    "coincidence_rates",
    "compute_link_rates",
    "db_to_fraction",
    "key_fraction",
    "link_intrinsic_error",
    "link_qber",
    "qber_threshold",
    "simulate_network",
    "singles_rate",
    "visibility_to_qber",
]
