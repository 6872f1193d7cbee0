"""
Binned per-link SKR traces with downtime masks.

Samples are folded into fixed-width bins counted from a common origin;
each bin holds the arithmetic mean of the samples a link logged in it. A
bin that overlaps any downtime interval is masked as a whole.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.core.topology import Link

LOGGER = logging.getLogger(__name__)

DEFAULT_BIN_WIDTH = 600.0
SECONDS_PER_DAY = 86400.0


@dataclass(frozen=True)
class SkrSample:
    """One logged key rate."""

    timestamp: float
    link: str
    skr: float


@dataclass(frozen=True)
class DowntimeInterval:
    """A period excluded from analysis, e.g. a cryogenic cycle."""

    start: float
    end: float
    reason: str = "downtime"

    def __post_init__(self):
        if not self.end > self.start:
            raise ValueError(f"Downtime interval must end after it starts ({self.start}, {self.end})")

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end, "reason": self.reason}


RecordLike = Union[SkrSample, Mapping[str, Any], Sequence[Any]]


def _canonical_link(link: str, reference_link: Optional[str]) -> str:
    if reference_link is not None and link == reference_link:
        return link
    return Link.parse(link).id


def _coerce(record: RecordLike, reference_link: Optional[str]) -> SkrSample:
    if isinstance(record, SkrSample):
        timestamp, link, skr = record.timestamp, record.link, record.skr
    elif isinstance(record, Mapping):
        skr = record.get("skr_bps", record.get("skr"))
        timestamp, link = record["timestamp"], record["link"]
    else:
        timestamp, link, skr = record
    timestamp, skr = float(timestamp), float(skr)
    if not (math.isfinite(timestamp) and math.isfinite(skr)) or skr < 0:
        raise ValueError(f"Invalid sample values: timestamp={timestamp}, skr={skr}")
    return SkrSample(timestamp, _canonical_link(str(link), reference_link), skr)


@dataclass
class SkrTrace:
    """
    Per-link binned SKR means.

    ``frame`` is indexed by bin number with one column per link; NaN marks a
    bin in which the link logged nothing.
    """

    frame: pd.DataFrame
    bin_width: float = DEFAULT_BIN_WIDTH
    origin: float = 0.0
    masks: List[DowntimeInterval] = field(default_factory=list)
    reference: Optional[pd.Series] = None
    rejected: int = 0

    @property
    def links(self) -> List[str]:
        return list(self.frame.columns)

    @property
    def bins(self) -> np.ndarray:
        return self.frame.index.to_numpy()

    def bin_start(self, index: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
        return self.origin + np.asarray(index) * self.bin_width

    @property
    def bin_starts(self) -> np.ndarray:
        return self.bin_start(self.bins)

    @property
    def masked(self) -> pd.Series:
        """True for every bin overlapping a downtime interval."""
        starts = self.bin_starts
        ends = starts + self.bin_width
        flags = np.zeros(len(starts), dtype=bool)
        for interval in self.masks:
            flags |= (interval.start < ends) & (interval.end > starts)
        return pd.Series(flags, index=self.frame.index)

    def unmasked_frame(self) -> pd.DataFrame:
        return self.frame.loc[~self.masked]

    def with_masks(self, masks: Iterable[DowntimeInterval]) -> "SkrTrace":
        return SkrTrace(
            frame=self.frame,
            bin_width=self.bin_width,
            origin=self.origin,
            masks=list(self.masks) + list(masks),
            reference=self.reference,
            rejected=self.rejected,
        )

    def to_samples(self) -> List[SkrSample]:
        """One sample per present (bin, link), stamped at the bin centre."""
        samples = []
        centres = self.bin_starts + self.bin_width / 2
        for centre, (_, row) in zip(centres, self.frame.iterrows()):
            for link, value in row.items():
                if not pd.isna(value):
                    samples.append(SkrSample(float(centre), str(link), float(value)))
        return samples


def ingest(
    records: Iterable[RecordLike],
    bin_width: float = DEFAULT_BIN_WIDTH,
    origin: float = 0.0,
    masks: Optional[Iterable[DowntimeInterval]] = None,
    reference_link: Optional[str] = None,
) -> SkrTrace:
    """
    Fold samples into a binned trace.

    Malformed records are counted in ``SkrTrace.rejected`` and skipped.
    Samples on ``reference_link`` go to ``SkrTrace.reference`` instead of
    the link frame.
    """
    if bin_width <= 0:
        raise ValueError(f"bin_width must be > 0, got {bin_width}")

    rows: List[Tuple[float, str, float]] = []
    rejected = 0
    for record in records:
        try:
            sample = _coerce(record, reference_link)
        except (KeyError, TypeError, ValueError) as e:
            rejected += 1
            LOGGER.debug("Rejected record %r: %s", record, e)
            continue
        rows.append((sample.timestamp, sample.link, sample.skr))
    if rejected:
        LOGGER.warning("Rejected %d malformed record(s)", rejected)

    data = pd.DataFrame(rows, columns=["timestamp", "link", "skr"])
    data["bin"] = np.floor((data["timestamp"] - origin) / bin_width).astype(np.int64)

    reference = None
    if reference_link is not None:
        is_reference = data["link"] == reference_link
        if is_reference.any():
            reference = data.loc[is_reference].groupby("bin")["skr"].mean().sort_index()
        data = data.loc[~is_reference]

    frame = data.pivot_table(index="bin", columns="link", values="skr", aggfunc="mean")
    if not frame.empty:
        frame = frame.reindex(range(int(frame.index.min()), int(frame.index.max()) + 1))
    frame = frame.sort_index(axis=1)
    frame.columns.name = None
    frame.index.name = "bin"

    LOGGER.info(
        "Ingested %d samples into %d bins over %d links", len(data), len(frame), frame.shape[1]
    )
    return SkrTrace(
        frame=frame,
        bin_width=float(bin_width),
        origin=float(origin),
        masks=list(masks or []),
        reference=reference,
        rejected=rejected,
    )
