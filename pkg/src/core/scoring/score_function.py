"""
Link score function f(SKR) and its inverse.

Scores are piecewise linear between breakpoints; by default linear in
log10(SKR). Below the fail threshold a link scores 0, above the last
breakpoint it scores 1.

Usage:
    fn = ScoreFunction()
    fn(1.0)           # 0.75
    fn.inverse(0.75)  # 1.0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from src.core.pipeline.status import FAILED, AeSkr, QualityBand

LOGGER = logging.getLogger(__name__)

DEFAULT_BREAKPOINTS: Tuple[Tuple[float, float], ...] = (
    (0.1, 0.25),
    (1.0, 0.75),
    (5.0, 0.875),
    (10.0, 0.925),
    (1e12, 1.0),
)

_BANDS = (
    QualityBand.ACCEPTABLE,
    QualityBand.OK,
    QualityBand.GOOD,
    QualityBand.GREAT,
)


class ScoreDomainError(ValueError):
    """Negative SKR, empty link list or empty subgroup."""
    pass


class UnreachableScoreError(ValueError):
    """A network score between 0 and the lowest breakpoint score."""
    pass


class Interpolation(str, Enum):
    """Axis on which scores are interpolated."""

    LOG = "log"
    LINEAR = "linear"


@dataclass(frozen=True)
class ScoreFunction:
    """Piecewise-linear link score with a fail threshold at the first breakpoint."""

    breakpoints: Tuple[Tuple[float, float], ...] = field(default=DEFAULT_BREAKPOINTS)
    interpolation: Interpolation = Interpolation.LOG

    def __post_init__(self):
        points = tuple((float(r), float(s)) for r, s in self.breakpoints)
        if len(points) < 2:
            raise ValueError("ScoreFunction needs at least 2 breakpoints")
        rates = [r for r, _ in points]
        scores = [s for _, s in points]
        if rates[0] <= 0:
            raise ValueError("breakpoint rates must be > 0")
        if any(b <= a for a, b in zip(rates, rates[1:])):
            raise ValueError("breakpoint rates must be strictly increasing")
        if any(b <= a for a, b in zip(scores, scores[1:])):
            raise ValueError("breakpoint scores must be strictly increasing")
        if scores[0] <= 0 or scores[-1] > 1:
            raise ValueError("breakpoint scores must lie in (0, 1]")
        object.__setattr__(self, "breakpoints", points)
        object.__setattr__(self, "interpolation", Interpolation(self.interpolation))

    @property
    def fail_threshold(self) -> float:
        return self.breakpoints[0][0]

    @property
    def max_rate(self) -> float:
        return self.breakpoints[-1][0]

    @property
    def min_score(self) -> float:
        return self.breakpoints[0][1]

    @property
    def max_score(self) -> float:
        return self.breakpoints[-1][1]

    def _axis(self, values: np.ndarray) -> np.ndarray:
        if self.interpolation is Interpolation.LOG:
            return np.log10(values)
        return values

    def _unaxis(self, values: np.ndarray) -> np.ndarray:
        if self.interpolation is Interpolation.LOG:
            return np.power(10.0, values)
        return values

    def scores(self, skrs: Union[Sequence[float], np.ndarray]) -> np.ndarray:
        """Vectorised f over an array of SKRs."""
        skrs = np.asarray(skrs, dtype=float)
        if np.any(skrs < 0) or np.any(np.isnan(skrs)):
            raise ScoreDomainError("SKR must be a non-negative number")
        rates = np.array([r for r, _ in self.breakpoints])
        levels = np.array([s for _, s in self.breakpoints])

        out = np.zeros_like(skrs)
        inside = (skrs >= self.fail_threshold) & (skrs <= self.max_rate)
        out[inside] = np.interp(self._axis(skrs[inside]), self._axis(rates), levels)
        out[skrs > self.max_rate] = 1.0
        return out

    def __call__(self, skr: float) -> float:
        return float(self.scores(np.array([skr]))[0])

    def inverse_array(self, ws: Union[Sequence[float], np.ndarray]) -> np.ndarray:
        """
        Vectorised f^-1. Zero maps to NaN (the FAILED outcome).

        Raises:
            UnreachableScoreError: For any W in (0, lowest breakpoint score)
        """
        ws = np.asarray(ws, dtype=float)
        if np.any((ws > 0) & (ws < self.min_score)) or np.any(ws < 0) or np.any(ws > 1):
            raise UnreachableScoreError(
                f"W must be 0 or within [{self.min_score}, 1]"
            )
        rates = np.array([r for r, _ in self.breakpoints])
        levels = np.array([s for _, s in self.breakpoints])

        out = np.full_like(ws, np.nan)
        valid = ws > 0
        clipped = np.minimum(ws[valid], self.max_score)
        out[valid] = self._unaxis(np.interp(clipped, levels, self._axis(rates)))
        return out

    def inverse(self, w: float) -> AeSkr:
        """f^-1(W), or FAILED for W = 0."""
        value = float(self.inverse_array(np.array([w]))[0])
        return FAILED if np.isnan(value) else value

    def band(self, skr: float) -> QualityBand:
        """Named region of the score function containing ``skr``."""
        if skr < 0:
            raise ScoreDomainError(f"SKR must be >= 0, got {skr}")
        if skr < self.fail_threshold:
            return QualityBand.UNACCEPTABLE
        rates = [r for r, _ in self.breakpoints]
        for i, upper in enumerate(rates[1:len(_BANDS)]):
            if skr < upper:
                return _BANDS[i]
        return _BANDS[-1]


DEFAULT_SCORE_FUNCTION = ScoreFunction()


def link_score(skr: float, fn: ScoreFunction = DEFAULT_SCORE_FUNCTION) -> float:
    """Score of one link: 0 below the fail threshold, 1 above the last breakpoint."""
    return fn(skr)
