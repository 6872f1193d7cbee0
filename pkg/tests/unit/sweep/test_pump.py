"""Unit tests for the pump power sweep."""

import numpy as np
import pytest
from joblib import parallel_backend

from src.core.pipeline.status import FAILED
from src.core.sweep import (
    NoViablePointError,
    SweepPoint,
    SweepPreconditionError,
    evaluate_point,
    find_plateau,
    log_grid,
    run_sweep,
    select_operating_point,
)
from src.core.topology import ChannelAssignment


def _point(singles, aeskr):
    return SweepPoint(reference_singles=singles, mu=singles, mean_skr=1.0, min_skr=0.5, aeskr=aeskr)


@pytest.fixture
def sweep_args(testbed_users, testbed_assignment, default_source, default_params):
    from src.core.physics import ReceiverModel, Receivers

    receivers = Receivers(
        ReceiverModel(detector_efficiency=0.15, dark_count_rate=400.0, internal_loss_db=3.0),
        {
            u.id: ReceiverModel(detector_efficiency=0.25, dark_count_rate=150.0, internal_loss_db=3.0)
            for u in testbed_users
            if u.deployed_loss_db is not None
        },
    )
    return testbed_users, testbed_assignment, default_source, receivers, default_params


class TestLogGrid:
    """Tests for log_grid."""

    def test_points_per_decade(self):
        grid = log_grid(1e4, 1e7, points_per_decade=31)
        assert len(grid) == 94
        assert grid[0] == pytest.approx(1e4)
        assert grid[-1] == pytest.approx(1e7)
        np.testing.assert_allclose(np.diff(np.log10(grid)), 1 / 31)

    def test_fixed_count(self):
        assert len(log_grid(1e3, 1e5, points=5)) == 5

    def test_single_point(self):
        assert log_grid(2e5, 2e5).tolist() == [2e5]

    @pytest.mark.parametrize("start,stop", [(0.0, 1e5), (1e5, 1e4), (-1.0, 1.0)])
    def test_bad_bounds(self, start, stop):
        with pytest.raises(SweepPreconditionError):
            log_grid(start, stop)

    def test_no_points(self):
        with pytest.raises(SweepPreconditionError):
            log_grid(1e3, 1e5, points=0)


class TestRunSweep:
    """Tests for run_sweep and evaluate_point."""

    def test_grid_order(self, sweep_args):
        grid = [1e6, 1e4, 1e5]
        points = run_sweep(*sweep_args, grid_values=grid)
        assert [p.reference_singles for p in points] == grid

    def test_parallel_matches_serial(self, sweep_args):
        grid = log_grid(1e4, 1e6, points=5)
        serial = run_sweep(*sweep_args, grid_values=grid, n_jobs=1)
        with parallel_backend("threading", n_jobs=2):
            parallel = run_sweep(*sweep_args, grid_values=grid, n_jobs=2)
        assert parallel == serial

    def test_reference_transmission(self, sweep_args):
        point = evaluate_point(1e5, *sweep_args, reference_transmission=0.5)
        assert point.mu == pytest.approx(2e5)

    def test_aeskr_between_min_and_mean(self, sweep_args):
        for point in run_sweep(*sweep_args, grid_values=log_grid(1e4, 1e7, points_per_decade=2)):
            assert not point.failed
            assert point.min_skr * (1 - 1e-9) <= point.aeskr <= point.mean_skr * (1 + 1e-9)

    def test_optimum_inside_grid(self, sweep_args):
        """Accidentals take over at high brightness, dark counts at low."""
        points = run_sweep(*sweep_args, grid_values=log_grid(1e4, 1e9, points_per_decade=2))
        best = select_operating_point(points)
        index = points.index(best)
        assert 0 < index < len(points) - 1
        assert points[-1].failed
        assert float(points[0].aeskr) < float(best.aeskr)

    def test_empty_grid(self, sweep_args):
        with pytest.raises(SweepPreconditionError):
            run_sweep(*sweep_args, grid_values=[])

    def test_incomplete_assignment(self, sweep_args):
        users, _, source, receivers, params = sweep_args
        partial = ChannelAssignment.from_pairs({6: (["alice"], ["bob"])})
        with pytest.raises(SweepPreconditionError, match="full mesh"):
            run_sweep(users, partial, source, receivers, params, grid_values=[1e5])

    def test_point_to_dict(self):
        assert _point(1e5, FAILED).to_dict()["aeskr"] == "FAILED"
        assert _point(1e5, 2.5).to_dict()["aeskr"] == 2.5


class TestOperatingPoint:
    """Tests for select_operating_point and find_plateau."""

    def test_best_aeskr(self):
        points = [_point(1e4, 1.0), _point(1e5, 3.0), _point(1e6, 2.0)]
        assert select_operating_point(points).reference_singles == 1e5

    def test_tie_goes_to_lower_rate(self):
        points = [_point(1e6, 3.0), _point(1e5, 3.0)]
        assert select_operating_point(points).reference_singles == 1e5

    def test_failed_points_ignored(self):
        points = [_point(1e4, FAILED), _point(1e5, 0.2), _point(1e6, FAILED)]
        assert select_operating_point(points).reference_singles == 1e5

    def test_no_viable_point(self):
        with pytest.raises(NoViablePointError):
            select_operating_point([_point(1e4, FAILED), _point(1e5, FAILED)])

    def test_plateau(self):
        values = [1.0, 2.75, 2.9, 3.0, 2.8, 2.0, FAILED]
        points = [_point(10.0 ** i, v) for i, v in enumerate(values)]
        assert find_plateau(points, tolerance=0.1) == (1, 4)

    def test_plateau_stops_at_failure(self):
        points = [_point(1e4, FAILED), _point(1e5, 3.0), _point(1e6, FAILED)]
        assert find_plateau(points) == (1, 1)


@pytest.fixture
def testbed_sweep(testbed_assignment):
    """Sweep the built-in network, optionally with other receivers or protocol."""
    from src.core.config import testbed_network_config

    config = testbed_network_config()

    def sweep(grid_values, receivers=None, params=None):
        return run_sweep(
            config.to_users(),
            testbed_assignment,
            config.source.to_source(),
            receivers or config.to_receivers(),
            params or config.protocol.to_params(),
            grid_values,
            config.grid.to_grid(),
            config.receiver.splitter,
            config.to_score_function(),
            config.source.reference_transmission,
        )

    sweep.config = config
    return sweep


@pytest.mark.slow
class TestTestbedSweep:
    """Shape of the sweep over the built-in twelve-user network."""

    def test_weakest_link_dies_before_mean_collapses(self, testbed_sweep):
        points = testbed_sweep(log_grid(1e3, 1e10))
        peak_mean = max(p.mean_skr for p in points)
        assert any(p.min_skr == 0.0 and p.mean_skr > 0.5 * peak_mean for p in points)

    def test_aeskr_plateau(self, testbed_sweep):
        points = testbed_sweep(log_grid(1e3, 1e10))
        first, last = find_plateau(points, tolerance=0.1)
        assert last - first + 1 >= 3
        peak = float(select_operating_point(points).aeskr)
        assert all(float(points[i].aeskr) >= 0.9 * peak for i in range(first, last + 1))

    def test_default_grid_brackets_optimum(self, testbed_sweep):
        section = testbed_sweep.config.sweep
        grid = log_grid(section.grid_min, section.grid_max, section.points_per_decade, section.points)
        points = testbed_sweep(grid)
        index = points.index(select_operating_point(points))
        assert 0 < index < len(points) - 1

    def test_no_optimum_without_noise(self, testbed_sweep):
        """Without dark counts and accidentals every link only gains from more pairs."""
        from src.core.physics import ProtocolParams, Receivers

        receivers = testbed_sweep.config.to_receivers()
        quiet = Receivers(
            receivers.default.updated(dark_count_rate=0.0),
            {uid: r.updated(dark_count_rate=0.0) for uid, r in receivers.overrides.items()},
        )
        params = ProtocolParams(include_accidentals=False)
        points = testbed_sweep(log_grid(1e3, 1e9, points_per_decade=4), quiet, params)

        assert all(b.min_skr > a.min_skr for a, b in zip(points, points[1:]))
        assert all(b.mean_skr > a.mean_skr for a, b in zip(points, points[1:]))
        assert select_operating_point(points) is points[-1]
