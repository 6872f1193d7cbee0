from __future__ import annotations

import sys
from pathlib import Path
from typing import Dict, List

import pytest

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.core.config import reset_global_config
from src.core.config.defaults import TESTBED_USERS
from src.core.physics import ProtocolParams, ReceiverModel, Receivers, SourceModel
from src.core.topology import ChannelAssignment, User, UserStatus

GROUP_A = ["alice", "bob", "chloe", "dave"]
GROUP_B = ["faye", "gopi", "heidi", "ivan"]
GROUP_C = ["jo", "kevin", "lea", "marek"]


def _bits(group: List[str], bit: int):
    plus = [u for i, u in enumerate(group) if not (i >> bit) & 1]
    minus = [u for i, u in enumerate(group) if (i >> bit) & 1]
    return plus, minus


def testbed_pairs() -> Dict[int, tuple]:
    """
    Full mesh of the 12 users on seven split pairs, four copies per user.

    Pairs 6..8 join the three groups of four; pairs 9..12 cover the links
    inside each group with one biclique per bit of the member index.
    """
    a0, a1 = _bits(GROUP_A, 0), _bits(GROUP_A, 1)
    b0, b1 = _bits(GROUP_B, 0), _bits(GROUP_B, 1)
    c0, c1 = _bits(GROUP_C, 0), _bits(GROUP_C, 1)
    return {
        6: (GROUP_A, GROUP_B),
        7: (GROUP_A, GROUP_C),
        8: (GROUP_B, GROUP_C),
        9: (a0[0] + b0[0], a0[1] + b0[1]),
        10: (a1[0] + b1[0], a1[1] + b1[1]),
        11: c0,
        12: c1,
    }


@pytest.fixture(autouse=True)
def _isolated_config(monkeypatch, tmp_path):
    """Never pick up a developer's ~/.qnetctl/config.json or QNETCTL_* variables."""
    monkeypatch.delenv("QNETCTL_CONFIG", raising=False)
    monkeypatch.delenv("QNETCTL_SEED", raising=False)
    monkeypatch.delenv("QNETCTL_LOG_LEVEL", raising=False)
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    reset_global_config()
    yield
    reset_global_config()


@pytest.fixture
def testbed_users() -> List[User]:
    """The twelve users; chloe and kevin failed commissioning."""
    return [
        User.from_bounce_back(u.id, u.bounce_back_loss_db, UserStatus(u.status)) for u in TESTBED_USERS
    ]


@pytest.fixture
def active_users(testbed_users) -> List[User]:
    return [u for u in testbed_users if u.is_active]


@pytest.fixture
def testbed_assignment() -> ChannelAssignment:
    return ChannelAssignment.from_pairs(testbed_pairs())


@pytest.fixture
def default_source() -> SourceModel:
    return SourceModel(4.5e5)


@pytest.fixture
def default_receivers() -> Receivers:
    return Receivers.uniform(ReceiverModel())


@pytest.fixture
def default_params() -> ProtocolParams:
    return ProtocolParams()
