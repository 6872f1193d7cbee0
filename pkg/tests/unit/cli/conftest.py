"""Fixtures for in-process CLI command tests."""
import itertools
import json

import pytest
from typer.testing import CliRunner

SMALL_USERS = [
    {"id": "alice", "bounce_back_loss_db": 1.45},
    {"id": "bob", "bounce_back_loss_db": 1.8},
    {"id": "faye"},
    {"id": "gopi"},
]


def write_config(path, **sections):
    """Write a network config with the four small users plus ``sections``."""
    data = {"users": SMALL_USERS, "sweep": {"n_jobs": 1}, "solver": {"seed": 0}}
    data.update(sections)
    path.write_text(json.dumps(data))
    return path


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def small_config(tmp_path):
    """Two deployed and two local users on the default grid."""
    return write_config(tmp_path / "network.json")


@pytest.fixture
def strict_config(tmp_path):
    """Scoring curve that FAILS any realistic link (threshold 1e9 bps)."""
    return write_config(
        tmp_path / "strict.json",
        scoring={"breakpoints": [[1e9, 0.25], [1e12, 1.0]]},
    )


@pytest.fixture
def infeasible_config(tmp_path):
    """Three users but only one unsplit pair: two links stay uncovered."""
    return write_config(
        tmp_path / "infeasible.json",
        users=SMALL_USERS[:3],
        grid={"available": [1], "excluded": []},
    )


@pytest.fixture
def small_trace(tmp_path):
    """
    Twenty 600 s bins of the six small-network links.

    Links with alice sit at 2.0 bps, the others at 6.0; alice-bob drops to
    0.05 bps from bin 12 on.
    """
    users = [u["id"] for u in SMALL_USERS]
    path = tmp_path / "skr_log.jsonl"
    lines = []
    for b in range(20):
        for a, c in itertools.combinations(users, 2):
            link = f"{a}-{c}"
            skr = 2.0 if "alice" in (a, c) else 6.0
            if link == "alice-bob" and b >= 12:
                skr = 0.05
            lines.append(json.dumps({"timestamp": b * 600 + 300, "link": link, "skr_bps": skr}))
    lines.append("not json")
    path.write_text("\n".join(lines) + "\n")
    return path
