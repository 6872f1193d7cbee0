"""
Failure detection and Table-style summaries of a binned SKR trace.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from src.core.pipeline.status import FAILED, AeSkr, is_failed
from src.core.scoring import (
    DEFAULT_SCORE_FUNCTION,
    ScoreFunction,
    Selector,
    network_aeskr,
    table_selectors,
)
from src.core.stability.trace import SECONDS_PER_DAY, SkrTrace
from src.core.topology import Link, User, users_by_id

LOGGER = logging.getLogger(__name__)


class EmptyWindowError(ValueError):
    """No unmasked bin before the failure."""
    pass


class Aggregation(str, Enum):
    """How the full-period AE-SKR of a selector is computed."""

    MEANS = "means"            # score each link's mean SKR, then combine
    BIN_SCORES = "bin-scores"  # invert the mean of the per-bin network scores


@dataclass(frozen=True)
class FailureEvent:
    """First bin in which a link dropped below the fail threshold."""

    time: float
    link: str
    skr: float

    @property
    def days(self) -> float:
        return self.time / SECONDS_PER_DAY

    def to_dict(self) -> Dict[str, Any]:
        return {"time_s": self.time, "time_days": self.days, "link": self.link, "skr_bps": self.skr}


def detect_failure(trace: SkrTrace, threshold: float = 0.1) -> Optional[FailureEvent]:
    """Earliest unmasked bin with any link below ``threshold``, or None."""
    frame = trace.unmasked_frame()
    if frame.empty:
        return None
    below = (frame < threshold).any(axis=1)
    if not below.any():
        return None
    first = below.idxmax()
    row = frame.loc[first]
    link = str(row.idxmin())
    event = FailureEvent(time=float(trace.bin_start(first)), link=link, skr=float(row[link]))
    LOGGER.info(
        "Network failure at %.4f days: link %s at %.4g bps", event.days, event.link, event.skr
    )
    return event


def _selector_columns(
    trace: SkrTrace, selector: Selector, users: Mapping[str, User]
) -> List[str]:
    chosen = []
    for column in trace.links:
        link = Link.parse(column)
        if link.a in users and link.b in users and selector.matches(link, users):
            chosen.append(column)
    return chosen


def bin_network_scores(frame: pd.DataFrame, fn: ScoreFunction = DEFAULT_SCORE_FUNCTION) -> pd.Series:
    """Per-bin W over the links present in each bin; NaN where no link is present."""
    values = frame.to_numpy(dtype=float)
    present = ~np.isnan(values)
    scores = np.zeros_like(values)
    scores[present] = fn.scores(values[present])

    counts = present.sum(axis=1)
    failed = (present & (scores == 0)).any(axis=1)
    logs = np.zeros_like(values)
    positive = present & (scores > 0)
    logs[positive] = np.log(scores[positive])

    w = np.full(len(values), np.nan)
    has = counts > 0
    w[has] = np.exp(logs[has].sum(axis=1) / counts[has])
    w[has] = np.clip(w[has], fn.min_score, fn.max_score)
    w[has & failed] = 0.0

    # Equal present scores give back that score exactly
    for i in np.flatnonzero(has & ~failed):
        row = scores[i][present[i]]
        if np.all(row == row[0]):
            w[i] = row[0]
    return pd.Series(w, index=frame.index)


def bin_aeskr(frame: pd.DataFrame, fn: ScoreFunction = DEFAULT_SCORE_FUNCTION) -> pd.DataFrame:
    """Per-bin W and AE-SKR; ``aeskr`` is NaN where the bin is FAILED or empty."""
    w = bin_network_scores(frame, fn)
    aeskr = pd.Series(np.nan, index=frame.index)
    has = w.notna().to_numpy()
    aeskr[has] = fn.inverse_array(w[has].to_numpy())

    values = frame.to_numpy(dtype=float)
    for i in np.flatnonzero(has):
        row = values[i][~np.isnan(values[i])]
        if w.iloc[i] > 0 and np.all(row == row[0]) and row[0] <= fn.max_rate:
            aeskr.iloc[i] = row[0]
    return pd.DataFrame({"w": w, "aeskr": aeskr})


def selector_series(
    trace: SkrTrace,
    selector: Selector,
    users: Sequence[User],
    fn: ScoreFunction = DEFAULT_SCORE_FUNCTION,
) -> pd.DataFrame:
    """Per-bin AE-SKR of a selector over every unmasked bin, recovery included."""
    index = users_by_id(users)
    frame = trace.unmasked_frame()[_selector_columns(trace, selector, index)]
    series = bin_aeskr(frame, fn)
    present = frame.notna().any(axis=1)
    series = series.loc[present]
    starts = trace.bin_start(series.index.to_numpy())
    out = pd.DataFrame({
        "time_s": starts,
        "time_days": starts / SECONDS_PER_DAY,
        "w": series["w"].to_numpy(),
        "aeskr": series["aeskr"].to_numpy(),
    })
    out["failed"] = out["w"] == 0
    return out


@dataclass
class SelectorSummary:
    """One row of the stability table."""

    label: str
    n_links: int
    full: AeSkr
    maximum: AeSkr
    minimum: AeSkr

    def to_dict(self) -> Dict[str, Any]:
        def dump(value: AeSkr) -> Any:
            return str(value) if is_failed(value) else value

        return {
            "label": self.label,
            "n_links": self.n_links,
            "aeskr": dump(self.full),
            "max": dump(self.maximum),
            "min": dump(self.minimum),
        }


@dataclass
class ReferenceStats:
    """Corrected counts of the reference channel over the summary window."""

    mean: float
    minimum: float
    maximum: float

    def to_dict(self) -> Dict[str, float]:
        return {"mean": self.mean, "min": self.minimum, "max": self.maximum}


@dataclass
class StabilitySummary:
    rows: List[SelectorSummary]
    failure: Optional[FailureEvent]
    window_start: float
    window_end: float
    window_bins: int
    bin_width: float
    aggregation: Aggregation = Aggregation.MEANS
    reference: Optional[ReferenceStats] = None
    rejected: int = 0
    masked_bins: int = 0

    def row(self, label: str) -> SelectorSummary:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bin_width_s": self.bin_width,
            "aggregation": self.aggregation.value,
            "window": {
                "start_s": self.window_start,
                "end_s": self.window_end,
                "start_days": self.window_start / SECONDS_PER_DAY,
                "end_days": self.window_end / SECONDS_PER_DAY,
                "bins": self.window_bins,
            },
            "failure": self.failure.to_dict() if self.failure else None,
            "rows": [row.to_dict() for row in self.rows],
            "reference": self.reference.to_dict() if self.reference else None,
            "rejected_records": self.rejected,
            "masked_bins": self.masked_bins,
        }


def _extreme(values: pd.Series, largest: bool) -> AeSkr:
    numeric = values.dropna()
    if numeric.empty:
        return FAILED
    return float(numeric.max() if largest else numeric.min())


def summarize(
    trace: SkrTrace,
    users: Sequence[User],
    selectors: Optional[Sequence[Selector]] = None,
    fn: ScoreFunction = DEFAULT_SCORE_FUNCTION,
    threshold: Optional[float] = None,
    aggregation: Aggregation = Aggregation.MEANS,
    reference_transmission: float = 1.0,
) -> StabilitySummary:
    """
    Full-period, max and min AE-SKR per selector up to the network failure.

    Args:
        trace: Binned trace, masks applied
        users: Network users; only active users get per-user rows
        selectors: Rows to produce (default: per user, per scenario, full)
        fn: Score function
        threshold: Fail threshold (default: the score function's)
        aggregation: How the full-period value is formed
        reference_transmission: Divides reference counts into corrected counts

    Raises:
        EmptyWindowError: When no unmasked bin precedes the failure
    """
    aggregation = Aggregation(aggregation)
    threshold = fn.fail_threshold if threshold is None else threshold
    index = users_by_id(users)
    selectors = list(selectors) if selectors is not None else table_selectors(users)

    failure = detect_failure(trace, threshold)
    masked = trace.masked
    frame = trace.frame.loc[~masked]
    if failure is not None:
        frame = frame.loc[trace.bin_start(frame.index.to_numpy()) < failure.time]
    frame = frame.loc[frame.notna().any(axis=1)]
    if frame.empty:
        raise EmptyWindowError("No unmasked bins before the failure to summarise")

    # masked bins are counted only inside the span of unmasked data
    present = trace.frame.index[(trace.frame.notna().any(axis=1) & ~masked).to_numpy()]
    in_span = (trace.frame.index >= present.min()) & (trace.frame.index <= present.max())

    rows: List[SelectorSummary] = []
    for selector in selectors:
        columns = _selector_columns(trace, selector, index)
        sub = frame[columns]
        sub = sub.loc[:, sub.notna().any(axis=0)]
        if sub.shape[1] == 0:
            LOGGER.warning("Skipping %s: no links in the summary window", selector.label)
            continue
        per_bin = bin_aeskr(sub.loc[sub.notna().any(axis=1)], fn)

        if aggregation is Aggregation.MEANS:
            full = network_aeskr(sub.mean(axis=0).to_numpy(), fn)
        else:
            full = fn.inverse(float(per_bin["w"].mean()))

        rows.append(SelectorSummary(
            label=selector.label,
            n_links=sub.shape[1],
            full=full,
            maximum=_extreme(per_bin["aeskr"], largest=True),
            minimum=_extreme(per_bin["aeskr"], largest=False),
        ))

    reference = None
    if trace.reference is not None:
        counts = trace.reference.reindex(frame.index).dropna() / reference_transmission
        if not counts.empty:
            reference = ReferenceStats(
                mean=float(counts.mean()), minimum=float(counts.min()), maximum=float(counts.max())
            )

    starts = trace.bin_start(frame.index.to_numpy())
    return StabilitySummary(
        rows=rows,
        failure=failure,
        window_start=float(starts.min()),
        window_end=float(starts.max() + trace.bin_width),
        window_bins=len(frame),
        bin_width=trace.bin_width,
        aggregation=aggregation,
        reference=reference,
        rejected=trace.rejected,
        masked_bins=int((masked & in_span).sum()),
    )
