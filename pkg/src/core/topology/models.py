"""
Users, links and channel assignments of a wavelength-multiplexed network.

A user receives copies of logical channels over a single fibre. Channels
with |LC| at or above the split threshold go through a 1-to-4 splitter, so
up to four users can hold a copy of the same channel, each on its own port.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core.grid import (
    DEFAULT_GRID,
    ChannelRangeError,
    GridConfig,
    LogicalChannel,
    is_split,
    parse_lc,
)

SPLIT_FANOUT = 4

_USER_ID = re.compile(r"^[A-Za-z0-9_.]+$")


class AssignmentError(ValueError):
    """A channel assignment violates a port or channel invariant."""
    pass


class UnknownUserError(KeyError):
    """A link or grant references a user that is not in the network."""
    pass


class Attachment(str, Enum):
    """How a user is connected to the distribution node."""

    DEPLOYED = "deployed"
    LOCAL = "local"


class UserStatus(str, Enum):
    """Commissioning result of a user."""

    ACTIVE = "active"
    FAILED = "failed"   # Planned for, but left out of rates and scores


class Scenario(str, Enum):
    """Connectivity scenario of a link."""

    DD = "D-D"
    DL = "D-L"
    LL = "L-L"


@dataclass(frozen=True)
class User:
    """A network user and its fibre attachment."""

    id: str
    attachment: Attachment = Attachment.LOCAL
    deployed_loss_db: Optional[float] = None
    """One-way deployed fibre loss, present iff deployed"""
    status: UserStatus = UserStatus.ACTIVE

    def __post_init__(self):
        if not _USER_ID.match(self.id):
            raise ValueError(f"Invalid user id {self.id!r} (letters, digits, '_' and '.')")
        object.__setattr__(self, "attachment", Attachment(self.attachment))
        object.__setattr__(self, "status", UserStatus(self.status))
        if self.attachment is Attachment.DEPLOYED:
            if self.deployed_loss_db is None or self.deployed_loss_db < 0:
                raise ValueError(f"Deployed user {self.id} needs a loss >= 0 dB")
        elif self.deployed_loss_db is not None:
            raise ValueError(f"Local user {self.id} cannot carry a deployed loss")

    @classmethod
    def from_bounce_back(
        cls,
        user_id: str,
        bounce_back_loss_db: Optional[float] = None,
        status: UserStatus = UserStatus.ACTIVE,
    ) -> "User":
        """
        Build a user from a round-trip (bounce-back) fibre loss.

        A loss of None means a local user; otherwise the one-way loss is half
        the bounce-back figure.
        """
        if bounce_back_loss_db is None:
            return cls(user_id, Attachment.LOCAL, None, status)
        return cls(user_id, Attachment.DEPLOYED, bounce_back_loss_db / 2.0, status)

    @property
    def one_way_loss_db(self) -> float:
        return self.deployed_loss_db or 0.0

    @property
    def is_active(self) -> bool:
        return self.status is UserStatus.ACTIVE


@dataclass(frozen=True, order=True)
class Link:
    """Unordered user pair, stored with ``a < b``."""

    a: str
    b: str

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"A link needs two distinct users, got {self.a!r} twice")
        if self.a > self.b:
            first, second = self.b, self.a
            object.__setattr__(self, "a", first)
            object.__setattr__(self, "b", second)

    @property
    def id(self) -> str:
        return f"{self.a}-{self.b}"

    def __str__(self) -> str:
        return self.id

    def __contains__(self, user_id: object) -> bool:
        return user_id in (self.a, self.b)

    def other(self, user_id: str) -> str:
        if user_id == self.a:
            return self.b
        if user_id == self.b:
            return self.a
        raise UnknownUserError(f"{user_id} is not an end of {self.id}")

    @classmethod
    def parse(cls, text: str) -> "Link":
        parts = [p for p in re.split(r"[-|:,\s]+", text.strip()) if p]
        if len(parts) != 2:
            raise ValueError(f"Cannot parse link id {text!r}")
        return cls(parts[0], parts[1])


def users_by_id(users: Iterable[User]) -> Dict[str, User]:
    """Index users by id, rejecting duplicates."""
    index: Dict[str, User] = {}
    for user in users:
        if user.id in index:
            raise ValueError(f"Duplicate user id {user.id!r}")
        index[user.id] = user
    return index


@dataclass(frozen=True, order=True)
class Grant:
    """One copy of a logical channel delivered to a user on a splitter port."""

    user_id: str
    lc: int
    port: int = 0

    @property
    def channel(self) -> LogicalChannel:
        return LogicalChannel(self.lc)


def _channel_order(lc: int) -> Tuple[int, int]:
    return abs(lc), 0 if lc > 0 else 1


@dataclass(frozen=True)
class ChannelAssignment:
    """
    Which users receive copies of which logical channels.

    Invariants (checked on construction):
      - LC 0 is never granted, all channels lie on the grid
      - ports run 0..3 on split channels and 0 on unsplit channels
      - no (channel, port) is booked twice
      - a user never holds two copies of the same channel
    """

    grants: Tuple[Grant, ...] = ()
    grid: GridConfig = field(default=DEFAULT_GRID)

    def __post_init__(self):
        ordered = tuple(sorted(set(self.grants), key=lambda g: (_channel_order(g.lc), g.port, g.user_id)))
        object.__setattr__(self, "grants", ordered)
        self._validate()

    def _validate(self) -> None:
        ports = set()
        holdings = set()
        for grant in self.grants:
            if grant.lc == 0:
                raise AssignmentError(f"LC 0 granted to {grant.user_id}")
            if abs(grant.lc) > self.grid.half_width:
                raise AssignmentError(f"LC {grant.lc:+d} is off the grid")
            capacity = self.capacity(grant.lc)
            if not 0 <= grant.port < capacity:
                raise AssignmentError(
                    f"Port {grant.port} invalid for LC {grant.lc:+d} (capacity {capacity})"
                )
            if (grant.lc, grant.port) in ports:
                raise AssignmentError(f"LC {grant.lc:+d} port {grant.port} booked twice")
            if (grant.user_id, grant.lc) in holdings:
                raise AssignmentError(f"{grant.user_id} holds LC {grant.lc:+d} twice")
            ports.add((grant.lc, grant.port))
            holdings.add((grant.user_id, grant.lc))

    def capacity(self, lc: int) -> int:
        """Number of users that may hold a copy of ``lc``."""
        try:
            return SPLIT_FANOUT if is_split(lc, self.grid) else 1
        except ChannelRangeError as e:
            raise AssignmentError(str(e)) from e

    @classmethod
    def from_pairs(
        cls,
        pairs: Mapping[int, Tuple[Iterable[str], Iterable[str]]],
        grid: GridConfig = DEFAULT_GRID,
    ) -> "ChannelAssignment":
        """
        Build an assignment from ``{k: (plus_side_users, minus_side_users)}``.

        Ports are handed out in user id order on each side.
        """
        grants: List[Grant] = []
        for k, (plus_side, minus_side) in pairs.items():
            for sign, side in ((1, plus_side), (-1, minus_side)):
                for port, user_id in enumerate(sorted(set(side))):
                    grants.append(Grant(user_id, sign * int(k), port))
        return cls(tuple(grants), grid)

    def with_grants(self, *grants: Grant) -> "ChannelAssignment":
        return ChannelAssignment(self.grants + tuple(grants), self.grid)

    @property
    def users(self) -> List[str]:
        return sorted({g.user_id for g in self.grants})

    def channels_of(self, user_id: str) -> List[LogicalChannel]:
        """Channels held by a user, ordered by |LC| then sign."""
        lcs = sorted((g.lc for g in self.grants if g.user_id == user_id), key=_channel_order)
        return [LogicalChannel(lc) for lc in lcs]

    def holders(self, lc: int) -> List[str]:
        lc = int(lc)
        return sorted(g.user_id for g in self.grants if g.lc == lc)

    def pair_sides(self) -> Dict[int, Tuple[FrozenSet[str], FrozenSet[str]]]:
        """``{k: (holders of +k, holders of -k)}`` for every pair with a grant."""
        sides: Dict[int, Tuple[set, set]] = {}
        for grant in self.grants:
            plus, minus = sides.setdefault(abs(grant.lc), (set(), set()))
            (plus if grant.lc > 0 else minus).add(grant.user_id)
        return {k: (frozenset(p), frozenset(m)) for k, (p, m) in sorted(sides.items())}

    def pairs_used(self) -> List[int]:
        return sorted({abs(g.lc) for g in self.grants})

    def split_pairs_used(self) -> List[int]:
        return [k for k in self.pairs_used() if is_split(k, self.grid)]

    def copies_per_user(self, user_ids: Optional[Iterable[str]] = None) -> Dict[str, int]:
        counts = {u: 0 for u in (user_ids or [])}
        for grant in self.grants:
            counts[grant.user_id] = counts.get(grant.user_id, 0) + 1
        return dict(sorted(counts.items()))

    def max_channels_per_user(self) -> int:
        counts = self.copies_per_user()
        return max(counts.values()) if counts else 0

    def objective(self) -> Tuple[int, int]:
        """Lexicographic cost: (max channel copies per user, conjugate pairs used)."""
        return self.max_channels_per_user(), len(self.pairs_used())

    def restricted_to(self, user_ids: Iterable[str]) -> "ChannelAssignment":
        keep = set(user_ids)
        return ChannelAssignment(tuple(g for g in self.grants if g.user_id in keep), self.grid)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "grid": {
                "first_itu": self.grid.first_itu,
                "last_itu": self.grid.last_itu,
                "center_itu": self.grid.center_itu,
                "split_threshold": self.grid.split_threshold,
            },
            "grants": [
                {"user": g.user_id, "lc": f"{g.lc:+d}", "port": g.port} for g in self.grants
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], grid: Optional[GridConfig] = None) -> "ChannelAssignment":
        if grid is None:
            grid = GridConfig(**data["grid"]) if "grid" in data else DEFAULT_GRID
        grants = []
        for item in data.get("grants", []):
            try:
                lc = parse_lc(item["lc"], grid)
                grants.append(Grant(str(item["user"]), lc.lc, int(item.get("port", 0))))
            except (KeyError, TypeError, ValueError) as e:
                raise AssignmentError(f"Invalid grant {item!r}: {e}") from e
        return cls(tuple(grants), grid)


def assignment_table(assignment: ChannelAssignment, users: Sequence[User]) -> List[Dict[str, Any]]:
    """Rows of (user, attachment, status, channels) for a human-readable table."""
    rows = []
    for user in users:
        channels = assignment.channels_of(user.id)
        rows.append({
            "user": user.id,
            "attachment": user.attachment.value,
            "status": user.status.value,
            "copies": len(channels),
            "channels": " ".join(str(c) for c in channels),
        })
    return rows
