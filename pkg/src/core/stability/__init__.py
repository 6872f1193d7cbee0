"""SKR trace ingestion, failure detection and stability summaries."""

from src.core.stability.analysis import (
    Aggregation,
    EmptyWindowError,
    FailureEvent,
    ReferenceStats,
    SelectorSummary,
    StabilitySummary,
    bin_aeskr,
    bin_network_scores,
    detect_failure,
    selector_series,
    summarize,
)
from src.core.stability.trace import (
    DEFAULT_BIN_WIDTH,
    SECONDS_PER_DAY,
    DowntimeInterval,
    SkrSample,
    SkrTrace,
    ingest,
)

__all__ = [
    "DEFAULT_BIN_WIDTH",
    "SECONDS_PER_DAY",
    "Aggregation",
    "DowntimeInterval",
    "EmptyWindowError",
    "FailureEvent",
    "ReferenceStats",
    "SelectorSummary",
    "SkrSample",
    "SkrTrace",
    "StabilitySummary",
    "bin_aeskr",
    "bin_network_scores",
    "detect_failure",
    "ingest",
    "selector_series",
    "summarize",
]
