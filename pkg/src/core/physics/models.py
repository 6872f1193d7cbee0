"""
Parameter and result types of the link rate model.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Mapping, Optional


class NoChannelError(ValueError):
    """The link is not served by any conjugate pair."""
    pass


class UndefinedQberError(ZeroDivisionError):
    """QBER asked for a link with zero coincidences and zero accidentals."""
    pass


class SplitterMode(str, Enum):
    """How a 1-to-4 splitter attenuates each copy."""

    EXACT = "exact"       # exactly one quarter (6.02 dB)
    NOMINAL = "nominal"   # the 6.00 dB figure

    @property
    def factor(self) -> float:
        return 0.25 if self is SplitterMode.EXACT else 10 ** (-6.0 / 10)


@dataclass(frozen=True)
class SourceModel:
    """Entangled pair source."""

    pair_rate_per_channel: float = 4.5e5
    """Pairs/s per conjugate pair at the source output, before splitting"""
    channel_spectrum: Mapping[int, float] = field(default_factory=dict)
    """Relative brightness per pair index k (missing entries count as 1)"""

    def __post_init__(self):
        if self.pair_rate_per_channel < 0:
            raise ValueError(f"pair_rate_per_channel must be >= 0, got {self.pair_rate_per_channel}")
        for k, weight in self.channel_spectrum.items():
            if weight <= 0:
                raise ValueError(f"channel_spectrum[{k}] must be > 0, got {weight}")

    def rate(self, k: int) -> float:
        """Pair rate of conjugate pair ±k."""
        return self.pair_rate_per_channel * self.channel_spectrum.get(abs(int(k)), 1.0)

    def with_rate(self, pair_rate: float) -> "SourceModel":
        return replace(self, pair_rate_per_channel=pair_rate)


@dataclass(frozen=True)
class ReceiverModel:
    """Polarisation analysis module and detectors of one user."""

    detector_efficiency: float = 0.1
    dark_count_rate: float = 100.0
    internal_loss_db: float = 0.0
    visibility: float = 0.99

    def __post_init__(self):
        if not 0.0 <= self.detector_efficiency <= 1.0:
            raise ValueError(f"detector_efficiency must be in [0, 1], got {self.detector_efficiency}")
        if self.dark_count_rate < 0:
            raise ValueError(f"dark_count_rate must be >= 0, got {self.dark_count_rate}")
        if self.internal_loss_db < 0:
            raise ValueError(f"internal_loss_db must be >= 0, got {self.internal_loss_db}")
        if not 0.0 <= self.visibility <= 1.0:
            raise ValueError(f"visibility must be in [0, 1], got {self.visibility}")

    def updated(self, **overrides: Any) -> "ReceiverModel":
        """Copy with the given fields replaced; None values are ignored."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class Receivers:
    """Network default receiver with per-user overrides."""

    default: ReceiverModel = field(default_factory=ReceiverModel)
    overrides: Mapping[str, ReceiverModel] = field(default_factory=dict)

    def for_user(self, user_id: str) -> ReceiverModel:
        return self.overrides.get(user_id, self.default)

    @classmethod
    def uniform(cls, receiver: ReceiverModel) -> "Receivers":
        return cls(default=receiver)


@dataclass(frozen=True)
class ProtocolParams:
    """BBM92 post-processing parameters."""

    sifting_factor: float = 0.5
    ec_efficiency: float = 1.1
    coincidence_window: float = 5e-10
    """Seconds"""
    include_accidentals: bool = True

    def __post_init__(self):
        if not 0.0 < self.sifting_factor <= 1.0:
            raise ValueError(f"sifting_factor must be in (0, 1], got {self.sifting_factor}")
        if self.ec_efficiency < 1.0:
            raise ValueError(f"ec_efficiency must be >= 1, got {self.ec_efficiency}")
        if self.coincidence_window <= 0:
            raise ValueError(f"coincidence_window must be > 0, got {self.coincidence_window}")


@dataclass(frozen=True)
class LinkRates:
    """Simulated rates of one link. Rates in counts/s, key rates in bits/s."""

    link: str
    singles_a: float
    singles_b: float
    true_coincidences: float
    accidentals: float
    qber: float
    sifted_rate: float
    skr: float
    pairs: tuple = ()
    scenario: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["pairs"] = " ".join(f"±{k}" for k in self.pairs)
        return data
