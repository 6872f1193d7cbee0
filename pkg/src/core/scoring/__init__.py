"""Link scores, network score W and AE-SKR."""

from src.core.scoring.report import (
    LinkScore,
    ScoreReport,
    Selector,
    SelectorKind,
    aeskr,
    network_aeskr,
    network_score,
    score_links,
    subgroup_aeskr,
    table_reports,
    table_selectors,
)
from src.core.scoring.score_function import (
    DEFAULT_BREAKPOINTS,
    DEFAULT_SCORE_FUNCTION,
    Interpolation,
    ScoreDomainError,
    ScoreFunction,
    UnreachableScoreError,
    link_score,
)

__all__ = [
    "DEFAULT_BREAKPOINTS",
    "DEFAULT_SCORE_FUNCTION",
    "Interpolation",
    "LinkScore",
    "ScoreDomainError",
    "ScoreFunction",
    "ScoreReport",
    "Selector",
    "SelectorKind",
    "UnreachableScoreError",
    "aeskr",
    "link_score",
    "network_aeskr",
    "network_score",
    "score_links",
    "subgroup_aeskr",
    "table_reports",
    "table_selectors",
]
