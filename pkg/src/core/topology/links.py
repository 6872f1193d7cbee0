"""
Served links and full-mesh verification.

A user pair {u, v} is served by conjugate pair k when one of them holds a
copy of +k and the other a copy of -k. Copies on the same side of a pair
share no correlations, so they never make a link.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import networkx as nx

from src.core.topology.models import (
    Attachment,
    ChannelAssignment,
    Link,
    Scenario,
    UnknownUserError,
    User,
)

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinkSet:
    """Links of an assignment with the conjugate pairs serving each one."""

    serving: Mapping[Link, Tuple[int, ...]] = field(default_factory=dict)

    def __contains__(self, link: object) -> bool:
        return link in self.serving

    def __iter__(self) -> Iterator[Link]:
        return iter(sorted(self.serving))

    def __len__(self) -> int:
        return len(self.serving)

    def pairs_for(self, link: Link) -> Tuple[int, ...]:
        return self.serving.get(link, ())

    def links_served_by(self, k: int) -> List[Link]:
        return sorted(link for link, pairs in self.serving.items() if k in pairs)

    def to_graph(self) -> nx.Graph:
        """Undirected graph with a ``pairs`` attribute on every edge."""
        graph = nx.Graph()
        for link, pairs in self.serving.items():
            graph.add_edge(link.a, link.b, pairs=pairs)
        return graph


def served_links(assignment: ChannelAssignment) -> LinkSet:
    """Enumerate every user pair served by some conjugate pair."""
    serving: Dict[Link, List[int]] = {}
    for k, (plus_side, minus_side) in assignment.pair_sides().items():
        for u in plus_side:
            for v in minus_side:
                if u == v:
                    continue  # self-pairing carries no link
                serving.setdefault(Link(u, v), []).append(k)
    return LinkSet({link: tuple(sorted(set(pairs))) for link, pairs in sorted(serving.items())})


@dataclass
class VerificationReport:
    """Outcome of a full-mesh check."""

    users: List[str]
    covered: List[Link]
    missing: List[Link]
    channel_counts: Dict[str, int]

    @property
    def expected(self) -> int:
        n = len(self.users)
        return n * (n - 1) // 2

    @property
    def passed(self) -> bool:
        return not self.missing and len(self.covered) == self.expected

    def summary(self) -> str:
        state = "full mesh" if self.passed else f"{len(self.missing)} missing"
        return f"{len(self.covered)}/{self.expected} links covered ({state})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "users": list(self.users),
            "covered": len(self.covered),
            "expected": self.expected,
            "missing": [link.id for link in self.missing],
            "channel_counts": dict(self.channel_counts),
        }


def _user_ids(users: Iterable[Union[User, str]]) -> List[str]:
    return sorted(u.id if isinstance(u, User) else str(u) for u in users)


def verify_full_mesh(
    assignment: ChannelAssignment, users: Sequence[Union[User, str]]
) -> VerificationReport:
    """
    Check that every pair of ``users`` shares a direct link.

    Missing links are reported, not raised.
    """
    ids = _user_ids(users)
    if len(ids) < 2:
        raise ValueError("Full-mesh verification needs at least 2 users")

    wanted = set(ids)
    served = served_links(assignment).to_graph()
    covered_graph = nx.Graph()
    covered_graph.add_nodes_from(ids)
    covered_graph.add_edges_from(
        (a, b) for a, b in served.edges() if a in wanted and b in wanted
    )
    missing_graph = nx.difference(nx.complete_graph(ids), covered_graph)

    report = VerificationReport(
        users=ids,
        covered=sorted(Link(a, b) for a, b in covered_graph.edges()),
        missing=sorted(Link(a, b) for a, b in missing_graph.edges()),
        channel_counts=assignment.copies_per_user(ids),
    )
    LOGGER.debug("Full-mesh check: %s", report.summary())
    return report


def scenario_of(link: Union[Link, Tuple[str, str]], users: Mapping[str, User]) -> Scenario:
    """Classify a link as D-D, D-L or L-L from its two attachments."""
    if not isinstance(link, Link):
        link = Link(*link)
    try:
        ends = (users[link.a], users[link.b])
    except KeyError as e:
        raise UnknownUserError(f"Unknown user {e.args[0]!r} in link {link.id}") from e
    deployed = sum(1 for u in ends if u.attachment is Attachment.DEPLOYED)
    return (Scenario.LL, Scenario.DL, Scenario.DD)[deployed]
