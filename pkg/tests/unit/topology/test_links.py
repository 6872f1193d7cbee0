"""Unit tests for served links, full-mesh verification and scenarios."""

import pytest

from src.core.topology import (
    ChannelAssignment,
    Grant,
    Link,
    Scenario,
    UnknownUserError,
    User,
    scenario_of,
    served_links,
    users_by_id,
    verify_full_mesh,
)


class TestServedLinks:
    """Tests for served_links."""

    def test_conjugate_rule(self):
        assignment = ChannelAssignment.from_pairs({7: (["u"], ["v"])})
        links = served_links(assignment)
        assert Link("u", "v") in links
        assert links.pairs_for(Link("u", "v")) == (7,)

    def test_same_side_copies_make_no_link(self):
        assignment = ChannelAssignment((Grant("u", 7, 0), Grant("v", 7, 1)))
        assert len(served_links(assignment)) == 0

    def test_four_by_four_biclique(self):
        assignment = ChannelAssignment.from_pairs({7: (list("abcd"), list("efgh"))})
        links = served_links(assignment)
        assert len(links) == 16
        assert len(links.links_served_by(7)) == 16

    def test_self_pairing_excluded(self):
        assignment = ChannelAssignment.from_pairs({7: (["a", "b"], ["a", "c"])})
        links = served_links(assignment)
        assert Link("a", "c") in links
        assert Link("a", "b") in links
        assert Link("b", "c") in links
        assert len(links) == 3

    def test_unsplit_pair_serves_one_link(self):
        assignment = ChannelAssignment.from_pairs({2: (["a"], ["b"])})
        assert len(served_links(assignment).links_served_by(2)) == 1

    def test_monotone(self, testbed_assignment):
        """Adding a grant never removes a served link."""
        before = set(served_links(testbed_assignment))
        after = set(served_links(testbed_assignment.with_grants(Grant("alice", -1))))
        assert before <= after

    def test_graph(self, testbed_assignment):
        graph = served_links(testbed_assignment).to_graph()
        assert graph.number_of_nodes() == 12
        assert graph.number_of_edges() == 66
        assert graph.edges["alice", "faye"]["pairs"] == (6,)


class TestVerifyFullMesh:
    """Tests for verify_full_mesh."""

    def test_two_users(self):
        assignment = ChannelAssignment.from_pairs({1: (["u"], ["v"])})
        report = verify_full_mesh(assignment, ["u", "v"])
        assert report.passed
        assert report.summary() == "1/1 links covered (full mesh)"

    def test_testbed_fixture(self, testbed_assignment, testbed_users):
        report = verify_full_mesh(testbed_assignment, testbed_users)
        assert report.passed
        assert len(report.covered) == 66
        assert report.channel_counts["alice"] == 4

    def test_empty_assignment(self, testbed_users):
        report = verify_full_mesh(ChannelAssignment(), testbed_users)
        assert not report.passed
        assert len(report.covered) == 0
        assert len(report.missing) == 66
        assert report.to_dict()["expected"] == 66

    def test_subset_of_users(self, testbed_assignment, active_users):
        report = verify_full_mesh(testbed_assignment, active_users)
        assert report.passed
        assert report.expected == 45

    def test_needs_two_users(self):
        with pytest.raises(ValueError):
            verify_full_mesh(ChannelAssignment(), ["u"])

    def test_missing_listed(self):
        assignment = ChannelAssignment.from_pairs({1: (["a"], ["b"])})
        report = verify_full_mesh(assignment, ["a", "b", "c"])
        assert report.missing == [Link("a", "c"), Link("b", "c")]
        assert "2 missing" in report.summary()


class TestScenario:
    """Tests for scenario_of."""

    @pytest.fixture
    def index(self, testbed_users):
        return users_by_id(testbed_users)

    @pytest.mark.parametrize(
        "a,b,scenario",
        [("alice", "bob", Scenario.DD), ("alice", "faye", Scenario.DL), ("faye", "gopi", Scenario.LL)],
    )
    def test_examples(self, index, a, b, scenario):
        assert scenario_of(Link(a, b), index) is scenario

    def test_unknown_user(self, index):
        with pytest.raises(UnknownUserError):
            scenario_of(Link("alice", "zed"), index)

    def test_unknown_user_is_key_error(self):
        with pytest.raises(KeyError):
            scenario_of(Link("a", "b"), {"a": User("a")})
