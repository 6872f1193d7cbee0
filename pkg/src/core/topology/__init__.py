"""Users, channel assignments, link coverage and the assignment solver."""

from src.core.topology.links import (
    LinkSet,
    VerificationReport,
    scenario_of,
    served_links,
    verify_full_mesh,
)
from src.core.topology.models import (
    SPLIT_FANOUT,
    AssignmentError,
    Attachment,
    ChannelAssignment,
    Grant,
    Link,
    Scenario,
    UnknownUserError,
    User,
    UserStatus,
    assignment_table,
    users_by_id,
)
from src.core.topology.solver import (
    DEFAULT_EXACT_LIMIT,
    InfeasibleAssignmentError,
    exact_assignment,
    solve_assignment,
)

__all__ = [
    "SPLIT_FANOUT",
    "DEFAULT_EXACT_LIMIT",
    "AssignmentError",
    "Attachment",
    "ChannelAssignment",
    "Grant",
    "InfeasibleAssignmentError",
    "Link",
    "LinkSet",
    "Scenario",
    "UnknownUserError",
    "User",
    "UserStatus",
    "VerificationReport",
    "assignment_table",
    "exact_assignment",
    "scenario_of",
    "served_links",
    "solve_assignment",
    "users_by_id",
    "verify_full_mesh",
]
