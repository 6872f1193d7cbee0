"""
Network score W, AE-SKR and subgroup reports.

W is the geometric mean of the link scores; the AE-SKR is f^-1(W). A single
failing link makes W zero and the AE-SKR FAILED.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
from scipy.stats import gmean

from src.core.pipeline.status import FAILED, AeSkr, is_failed
from src.core.scoring.score_function import (
    DEFAULT_SCORE_FUNCTION,
    ScoreDomainError,
    ScoreFunction,
)
from src.core.topology import Link, Scenario, User, scenario_of, users_by_id

LOGGER = logging.getLogger(__name__)


def network_score(
    skrs: Union[Sequence[float], np.ndarray], fn: ScoreFunction = DEFAULT_SCORE_FUNCTION
) -> float:
    """Geometric mean of the link scores."""
    scores = fn.scores(skrs)
    if scores.size == 0:
        raise ScoreDomainError("Network score needs at least one link")
    if np.any(scores == 0):
        return 0.0
    if np.all(scores == scores[0]):
        return float(scores[0])
    return float(np.clip(gmean(scores), scores.min(), scores.max()))


def aeskr(w: float, fn: ScoreFunction = DEFAULT_SCORE_FUNCTION) -> AeSkr:
    """Average-effective SKR of a network score."""
    return fn.inverse(w)


def network_aeskr(
    skrs: Union[Sequence[float], np.ndarray], fn: ScoreFunction = DEFAULT_SCORE_FUNCTION
) -> AeSkr:
    """AE-SKR straight from link SKRs; equal rates inside the scored range map back exactly."""
    values = np.asarray(skrs, dtype=float)
    w = network_score(values, fn)
    if w > 0 and np.all(values == values[0]) and values[0] <= fn.max_rate:
        return float(values[0])
    return aeskr(w, fn)


class SelectorKind(str, Enum):
    ALL = "all"
    USER = "user"
    SCENARIO = "scenario"


@dataclass(frozen=True)
class Selector:
    """Which links a subgroup report covers."""

    kind: SelectorKind = SelectorKind.ALL
    value: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", SelectorKind(self.kind))
        if self.kind is SelectorKind.SCENARIO:
            object.__setattr__(self, "value", Scenario(self.value).value)
        elif self.kind is SelectorKind.USER and not self.value:
            raise ValueError("User selector needs a user id")

    @classmethod
    def parse(cls, text: str) -> "Selector":
        """Parse ``all``, ``user:<id>``, ``scenario:<D-D|D-L|L-L>`` or a bare scenario."""
        text = text.strip()
        if text.lower() in ("all", "full", "full network"):
            return cls(SelectorKind.ALL)
        if text.upper() in {s.value for s in Scenario}:
            return cls(SelectorKind.SCENARIO, text.upper())
        kind, sep, value = text.partition(":")
        if not sep:
            return cls(SelectorKind.USER, text)
        return cls(SelectorKind(kind.lower()), value)

    @property
    def label(self) -> str:
        if self.kind is SelectorKind.ALL:
            return "full network"
        return str(self.value)

    @property
    def slug(self) -> str:
        if self.kind is SelectorKind.ALL:
            return "full"
        return f"{self.kind.value}_{self.value}"

    def matches(self, link: Link, users: Mapping[str, User]) -> bool:
        if self.kind is SelectorKind.ALL:
            return True
        if self.kind is SelectorKind.USER:
            return self.value in link
        return scenario_of(link, users).value == self.value


def table_selectors(users: Sequence[User]) -> List[Selector]:
    """Per active user in input order, then L-L, D-L, D-D, then the full network."""
    selectors = [Selector(SelectorKind.USER, u.id) for u in users if u.is_active]
    selectors += [Selector(SelectorKind.SCENARIO, s.value) for s in (Scenario.LL, Scenario.DL, Scenario.DD)]
    selectors.append(Selector(SelectorKind.ALL))
    return selectors


@dataclass(frozen=True)
class LinkScore:
    link: str
    skr: float
    score: float


@dataclass
class ScoreReport:
    """Scores of a set of links."""

    label: str
    links: List[LinkScore] = field(default_factory=list)
    w: float = 0.0
    aeskr: AeSkr = FAILED

    @property
    def failed(self) -> bool:
        return is_failed(self.aeskr)

    @property
    def mean_skr(self) -> float:
        return float(np.mean([ls.skr for ls in self.links])) if self.links else 0.0

    @property
    def min_skr(self) -> float:
        return float(min(ls.skr for ls in self.links)) if self.links else 0.0

    def failing_links(self, fn: ScoreFunction = DEFAULT_SCORE_FUNCTION) -> List[LinkScore]:
        return [ls for ls in self.links if ls.skr < fn.fail_threshold]

    def to_dict(self, include_links: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "label": self.label,
            "n_links": len(self.links),
            "w": self.w,
            "aeskr": self.aeskr.value if self.failed else self.aeskr,
            "mean_skr": self.mean_skr,
            "min_skr": self.min_skr,
        }
        if include_links:
            data["links"] = [
                {"link": ls.link, "skr_bps": ls.skr, "score": ls.score} for ls in self.links
            ]
        return data


def score_links(
    skrs: Mapping[str, float],
    fn: ScoreFunction = DEFAULT_SCORE_FUNCTION,
    label: str = "full network",
) -> ScoreReport:
    """Score a ``{link id: skr}`` mapping."""
    if not skrs:
        raise ScoreDomainError(f"No links to score for {label}")
    ids = list(skrs)
    values = np.array([skrs[i] for i in ids], dtype=float)
    scores = fn.scores(values)
    w = network_score(values, fn)
    report = ScoreReport(
        label=label,
        links=[LinkScore(i, float(r), float(s)) for i, r, s in zip(ids, values, scores)],
        w=w,
        aeskr=network_aeskr(values, fn),
    )
    LOGGER.debug("Scored %s: %d links, W=%.6f", label, len(ids), w)
    return report


def _link_key(link: Union[Link, str]) -> Link:
    return link if isinstance(link, Link) else Link.parse(link)


def subgroup_aeskr(
    skrs: Mapping[Union[Link, str], float],
    users: Union[Sequence[User], Mapping[str, User]],
    selector: Selector,
    fn: ScoreFunction = DEFAULT_SCORE_FUNCTION,
) -> ScoreReport:
    """
    Score only the links picked by ``selector``.

    Raises:
        ScoreDomainError: If no link matches
    """
    index = users if isinstance(users, Mapping) else users_by_id(users)
    chosen = {}
    for key, skr in skrs.items():
        link = _link_key(key)
        if selector.matches(link, index):
            chosen[link.id] = skr
    if not chosen:
        raise ScoreDomainError(f"No links match selector {selector.label!r}")
    return score_links(chosen, fn, label=selector.label)


def table_reports(
    skrs: Mapping[Union[Link, str], float],
    users: Sequence[User],
    fn: ScoreFunction = DEFAULT_SCORE_FUNCTION,
) -> List[ScoreReport]:
    """Per-user, per-scenario and full-network reports; empty groups are skipped."""
    reports = []
    for selector in table_selectors(users):
        try:
            reports.append(subgroup_aeskr(skrs, users, selector, fn))
        except ScoreDomainError:
            LOGGER.warning("Skipping empty subgroup %s", selector.label)
    return reports
