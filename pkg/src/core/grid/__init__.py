"""DWDM channel grid: ITU numbering, logical channels and conjugate pairing."""

from src.core.grid.channels import (
    DEFAULT_GRID,
    ChannelRangeError,
    ConjugatePair,
    DegenerateChannelError,
    GridConfig,
    ItuChannel,
    LogicalChannel,
    conjugate,
    conjugate_pairs,
    is_split,
    itu_frequency,
    itu_to_lc,
    lc_frequency,
    lc_to_itu,
    parse_lc,
    validate_lc,
)

__all__ = [
    "DEFAULT_GRID",
    "ChannelRangeError",
    "ConjugatePair",
    "DegenerateChannelError",
    "GridConfig",
    "ItuChannel",
    "LogicalChannel",
    "conjugate",
    "conjugate_pairs",
    "is_split",
    "itu_frequency",
    "itu_to_lc",
    "lc_frequency",
    "lc_to_itu",
    "parse_lc",
    "validate_lc",
]
