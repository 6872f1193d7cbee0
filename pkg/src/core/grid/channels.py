"""
DWDM grid arithmetic for the entanglement source.

The source output is cut into 100 GHz ITU channels. Channels are relabelled
as logical channels (LC) counted from the centre channel, so that LC +k and
LC -k carry the two photons of an entangled pair.

Usage:
    grid = GridConfig()
    lc = itu_to_lc(ItuChannel(40))      # LogicalChannel(+6)
    conjugate(lc)                       # LogicalChannel(-6)
    is_split(lc)                        # True
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Union

ITU_BASE_THZ = 190.0
ITU_SPACING_THZ = 0.1

_LC_LABEL = re.compile(r"^\s*(?:LC\s*)?([+-]?)\s*(\d+)\s*$", re.IGNORECASE)


class ChannelRangeError(ValueError):
    """Channel number outside the configured grid."""
    pass


class DegenerateChannelError(ValueError):
    """The centre channel (LC 0) was used where a distinct partner is required."""
    pass


@dataclass(frozen=True)
class GridConfig:
    """Extent of the DWDM grid and the splitter rule."""

    first_itu: int = 19
    last_itu: int = 49
    center_itu: int = 34
    split_threshold: int = 6
    """Channels with |LC| >= split_threshold pass a 1-to-4 splitter"""

    def __post_init__(self):
        if not self.first_itu < self.center_itu < self.last_itu:
            raise ValueError(
                f"center_itu={self.center_itu} must lie strictly inside "
                f"[{self.first_itu}, {self.last_itu}]"
            )
        if self.center_itu - self.first_itu != self.last_itu - self.center_itu:
            raise ValueError("grid must be symmetric about center_itu")
        if self.split_threshold < 1:
            raise ValueError("split_threshold must be >= 1")

    @property
    def half_width(self) -> int:
        """Largest |LC| on the grid."""
        return self.center_itu - self.first_itu

    @property
    def center_frequency_thz(self) -> float:
        return ITU_BASE_THZ + ITU_SPACING_THZ * self.center_itu


DEFAULT_GRID = GridConfig()


@dataclass(frozen=True, order=True)
class ItuChannel:
    """A channel number on the ITU 100 GHz grid."""

    index: int

    @property
    def frequency_thz(self) -> float:
        return itu_frequency(self)


@dataclass(frozen=True, order=True)
class LogicalChannel:
    """ITU channel relabelled around the centre channel."""

    lc: int

    def __neg__(self) -> "LogicalChannel":
        return LogicalChannel(-self.lc)

    def __abs__(self) -> int:
        return abs(self.lc)

    def __int__(self) -> int:
        return self.lc

    def __str__(self) -> str:
        return f"{self.lc:+d}" if self.lc else "0"


@dataclass(frozen=True, order=True)
class ConjugatePair:
    """The entangled channel pair (+k, -k)."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"conjugate pair index must be positive, got {self.k}")

    @property
    def plus(self) -> LogicalChannel:
        return LogicalChannel(self.k)

    @property
    def minus(self) -> LogicalChannel:
        return LogicalChannel(-self.k)

    def is_split(self, grid: GridConfig = DEFAULT_GRID) -> bool:
        return is_split(self.plus, grid)

    def __str__(self) -> str:
        return f"±{self.k}"


ChannelLike = Union[LogicalChannel, int]


def _as_lc(lc: ChannelLike) -> LogicalChannel:
    return lc if isinstance(lc, LogicalChannel) else LogicalChannel(int(lc))


def validate_lc(lc: ChannelLike, grid: GridConfig = DEFAULT_GRID) -> LogicalChannel:
    """Return ``lc`` as a LogicalChannel, raising if it is off the grid."""
    channel = _as_lc(lc)
    if abs(channel.lc) > grid.half_width:
        raise ChannelRangeError(
            f"LC {channel} outside grid (|LC| <= {grid.half_width})"
        )
    return channel


def itu_to_lc(itu: Union[ItuChannel, int], grid: GridConfig = DEFAULT_GRID) -> LogicalChannel:
    """Map an ITU channel number to its logical channel."""
    index = itu.index if isinstance(itu, ItuChannel) else int(itu)
    if not grid.first_itu <= index <= grid.last_itu:
        raise ChannelRangeError(
            f"ITU channel {index} outside grid [{grid.first_itu}, {grid.last_itu}]"
        )
    return LogicalChannel(index - grid.center_itu)


def lc_to_itu(lc: ChannelLike, grid: GridConfig = DEFAULT_GRID) -> ItuChannel:
    """Inverse of :func:`itu_to_lc`."""
    channel = validate_lc(lc, grid)
    return ItuChannel(channel.lc + grid.center_itu)


def itu_frequency(itu: Union[ItuChannel, int]) -> float:
    """Centre frequency (THz) of an ITU channel."""
    index = itu.index if isinstance(itu, ItuChannel) else int(itu)
    return ITU_BASE_THZ + ITU_SPACING_THZ * index


def lc_frequency(lc: ChannelLike, grid: GridConfig = DEFAULT_GRID) -> float:
    """Centre frequency (THz) of a logical channel."""
    channel = validate_lc(lc, grid)
    return grid.center_frequency_thz + ITU_SPACING_THZ * channel.lc


def conjugate(lc: ChannelLike, grid: GridConfig = DEFAULT_GRID) -> LogicalChannel:
    """Entangled partner channel of ``lc``."""
    channel = validate_lc(lc, grid)
    if channel.lc == 0:
        raise DegenerateChannelError("LC 0 is the degenerate centre and has no partner")
    return -channel


def is_split(lc: ChannelLike, grid: GridConfig = DEFAULT_GRID) -> bool:
    """True when the channel passes a 1-to-4 splitter."""
    channel = validate_lc(lc, grid)
    return abs(channel.lc) >= grid.split_threshold


def parse_lc(label: Union[str, int, LogicalChannel], grid: GridConfig = DEFAULT_GRID) -> LogicalChannel:
    """Parse ``"+7"``, ``"-7"``, ``"7"`` or ``"LC-7"`` into a LogicalChannel."""
    if isinstance(label, (int, LogicalChannel)):
        return validate_lc(label, grid)
    match = _LC_LABEL.match(str(label))
    if not match:
        raise ValueError(f"Not a logical channel label: {label!r}")
    sign, digits = match.groups()
    value = int(digits)
    return validate_lc(-value if sign == "-" else value, grid)


def conjugate_pairs(
    grid: GridConfig = DEFAULT_GRID,
    excluded: Optional[Iterable[ChannelLike]] = None,
    only: Optional[Iterable[int]] = None,
) -> List[ConjugatePair]:
    """
    Conjugate pairs that may be assigned.

    Args:
        grid: Grid extent
        excluded: Logical channels withheld from users; a pair is dropped
            when either member is excluded
        only: Restrict to these pair indices

    Returns:
        Pairs sorted by k
    """
    blocked = {abs(validate_lc(lc, grid).lc) for lc in (excluded or [])}
    wanted = set(range(1, grid.half_width + 1)) if only is None else {int(k) for k in only}
    for k in wanted:
        if not 1 <= k <= grid.half_width:
            raise ChannelRangeError(f"pair ±{k} outside grid (1..{grid.half_width})")
    return [ConjugatePair(k) for k in sorted(wanted - blocked)]
