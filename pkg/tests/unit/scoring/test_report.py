"""Unit tests for network scores, AE-SKR and subgroup reports."""

import itertools
import math

import numpy as np
import pytest

from src.core.pipeline.status import FAILED, is_failed
from src.core.scoring import (
    DEFAULT_SCORE_FUNCTION,
    ScoreDomainError,
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
from src.core.topology import Link, Scenario


def _as_number(value):
    return -1.0 if is_failed(value) else float(value)


@pytest.fixture
def testbed_skrs(active_users):
    """Synthetic SKRs over the 45 active links, lower for deployed users."""
    ids = [u.id for u in active_users]
    deployed = {u.id for u in active_users if u.deployed_loss_db is not None}
    skrs = {}
    for a, b in itertools.combinations(ids, 2):
        skrs[Link(a, b).id] = 2.0 if {a, b} & deployed else 6.0
    return skrs


class TestNetworkScore:
    """Tests for W and the AE-SKR."""

    def test_geometric_mean(self):
        skrs = [0.3, 2.0, 7.5, 40.0, 1e3]
        scores = [DEFAULT_SCORE_FUNCTION(s) for s in skrs]
        expected = math.prod(scores) ** (1 / len(scores))
        assert network_score(skrs) == pytest.approx(expected, rel=1e-12)

    def test_brute_force_scenarios(self):
        """Compare W with a direct product over random link sets."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            n = int(rng.integers(1, 30))
            skrs = 10 ** rng.uniform(-0.9, 4, size=n)
            scores = [DEFAULT_SCORE_FUNCTION(s) for s in skrs]
            expected = math.exp(sum(math.log(s) for s in scores) / n)
            assert network_score(skrs) == pytest.approx(expected, rel=1e-12)

    def test_equal_links_give_exact_rate(self):
        assert network_aeskr([3.7] * 16) == 3.7
        assert network_aeskr([0.1] * 4) == 0.1

    def test_below_mean(self):
        skrs = [0.5, 50.0]
        value = network_aeskr(skrs)
        assert min(skrs) < value < float(np.mean(skrs))

    def test_one_failing_link(self):
        skrs = [5.0] * 44 + [0.096]
        assert network_score(skrs) == 0.0
        assert network_aeskr(skrs) is FAILED

    def test_aeskr_of_w(self):
        assert aeskr(0.75) == pytest.approx(1.0)
        assert aeskr(0.0) is FAILED

    def test_empty(self):
        with pytest.raises(ScoreDomainError):
            network_score([])

    def test_raising_a_link_never_lowers_aeskr(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            skrs = 10 ** rng.uniform(-1.2, 3, size=12)
            before = _as_number(network_aeskr(skrs))
            raised = skrs.copy()
            raised[int(rng.integers(12))] *= float(rng.uniform(1.0, 20.0))
            after = _as_number(network_aeskr(raised))
            assert after >= before - 1e-12 * max(1.0, abs(before))


class TestScoreLinks:
    """Tests for score_links and ScoreReport."""

    def test_report(self):
        report = score_links({"a-b": 1.0, "a-c": 10.0}, label="demo")
        assert report.label == "demo"
        assert [ls.score for ls in report.links] == pytest.approx([0.75, 0.925])
        assert report.mean_skr == pytest.approx(5.5)
        assert report.min_skr == 1.0
        assert not report.failed

    def test_failing_links(self):
        report = score_links({"a-b": 0.05, "a-c": 10.0})
        assert report.failed
        assert [ls.link for ls in report.failing_links()] == ["a-b"]
        assert report.to_dict()["aeskr"] == "FAILED"

    def test_to_dict(self):
        data = score_links({"a-b": 2.0}).to_dict(include_links=False)
        assert data["n_links"] == 1
        assert data["aeskr"] == 2.0
        assert "links" not in data

    def test_empty(self):
        with pytest.raises(ScoreDomainError):
            score_links({})


class TestSelectors:
    """Tests for subgroup selection."""

    @pytest.mark.parametrize(
        "text,kind,value",
        [
            ("all", SelectorKind.ALL, None),
            ("d-l", SelectorKind.SCENARIO, "D-L"),
            ("scenario:L-L", SelectorKind.SCENARIO, "L-L"),
            ("user:alice", SelectorKind.USER, "alice"),
            ("alice", SelectorKind.USER, "alice"),
        ],
    )
    def test_parse(self, text, kind, value):
        selector = Selector.parse(text)
        assert selector.kind is kind
        assert selector.value == value

    def test_bad_scenario(self):
        with pytest.raises(ValueError):
            Selector.parse("scenario:X-Y")

    def test_labels(self):
        assert Selector().label == "full network"
        assert Selector().slug == "full"
        assert Selector(SelectorKind.USER, "bob").slug == "user_bob"

    def test_table_order(self, testbed_users):
        selectors = table_selectors(testbed_users)
        assert len(selectors) == 14
        assert selectors[0] == Selector(SelectorKind.USER, "alice")
        assert Selector(SelectorKind.USER, "kevin") not in selectors
        assert [s.value for s in selectors[10:13]] == ["L-L", "D-L", "D-D"]
        assert selectors[-1].kind is SelectorKind.ALL


class TestSubgroups:
    """Tests for subgroup_aeskr and table_reports."""

    def test_user_subgroup(self, testbed_skrs, active_users):
        report = subgroup_aeskr(testbed_skrs, active_users, Selector(SelectorKind.USER, "faye"))
        assert len(report.links) == 9
        assert all("faye" in Link.parse(ls.link) for ls in report.links)

    @pytest.mark.parametrize("scenario,count,rate", [(Scenario.DD, 3, 2.0), (Scenario.DL, 21, 2.0), (Scenario.LL, 21, 6.0)])
    def test_scenario_subgroups(self, testbed_skrs, active_users, scenario, count, rate):
        report = subgroup_aeskr(testbed_skrs, active_users, Selector(SelectorKind.SCENARIO, scenario.value))
        assert len(report.links) == count
        assert report.aeskr == rate

    def test_link_keys(self, testbed_skrs, active_users):
        keyed = {Link.parse(k): v for k, v in testbed_skrs.items()}
        report = subgroup_aeskr(keyed, active_users, Selector())
        assert len(report.links) == 45

    def test_empty_subgroup(self, testbed_skrs, active_users):
        with pytest.raises(ScoreDomainError):
            subgroup_aeskr(testbed_skrs, active_users, Selector(SelectorKind.USER, "zed"))

    def test_table_reports(self, testbed_skrs, testbed_users):
        reports = table_reports(testbed_skrs, testbed_users)
        assert len(reports) == 14
        full = reports[-1]
        assert full.label == "full network"
        assert len(full.links) == 45
        assert 2.0 < full.aeskr < 6.0

    def test_table_reports_skip_empty(self, active_users):
        reports = table_reports({"faye-gopi": 4.0}, active_users)
        labels = [r.label for r in reports]
        assert labels == ["faye", "gopi", "L-L", "full network"]
