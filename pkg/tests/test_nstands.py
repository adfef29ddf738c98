import math

import numpy as np
import pytest

from PyKCenter.PointSet import PointSet
from PyKCenter.DistanceMatrix import DistanceMatrix
from PyKCenter.OracleSession import OracleSession
from PyKCenter.RunConfig import RunConfig, TrackAndStopConfig
from PyKCenter.MaximinOptimizer import AscentConfig
import PyKCenter.NSTandS as NSTandSModule
from PyKCenter.NSTandS import exploration_rate, TrackAndStopStage, NSTandS, ns_tands, MaximinBandit
from PyKCenter.Exceptions import OracleError, ParameterError, RunFailure

SPACED = [[-0.5], [-0.3], [0.0], [0.2], [0.5]]
THREE_BOX_MEANS = [[0.45, 0.5, 0.55], [0.35, 0.4, 0.6], [0.3, 0.47, 0.52]]


def _tands(recompute_period: int = 50, iterations: int = 200, **changes) -> TrackAndStopConfig:
    return TrackAndStopConfig(recompute_period=recompute_period, ascent=AscentConfig(iterations=iterations),
                              **changes)


def test_exploration_rate_forms():
    assert exploration_rate(100, 0.001) == pytest.approx(math.log(2.0 * 100 / 0.001))
    assert exploration_rate(100, 0.001, 'logt') == pytest.approx(math.log(100 / 0.001))


def test_stage_stops_on_noiseless_rewards():
    means = np.array([[0.9, 0.8], [0.1, 0.3]])
    counts = np.zeros((2, 2))
    sums = np.zeros((2, 2))
    stage = TrackAndStopStage(counts, sums, lambda i, j: float(means[i, j]), 0.01, 0.01, _tands(), 2.0)
    box, queries, margin = stage.run()
    assert box == 0
    assert queries == counts.sum() == stage.queries
    assert margin > 0 and stage.statistic > 0
    np.testing.assert_allclose(sums / counts, means)


def test_stage_validation():
    with pytest.raises(ParameterError):
        TrackAndStopStage(np.zeros((2, 2)), np.zeros((2, 3)), lambda i, j: 0.0, 0.01, 1.0, _tands(), 1.0)
    with pytest.raises(ParameterError):
        TrackAndStopStage(np.zeros((2, 2)), np.zeros((2, 2)), lambda i, j: 0.0, 1.5, 1.0, _tands(), 1.0)
    with pytest.raises(ParameterError):
        TrackAndStopConfig(beta_form='sqrt')
    with pytest.raises(ParameterError):
        TrackAndStopConfig(recompute_period=0)
    with pytest.raises(ParameterError):
        TrackAndStopConfig(recompute_iterations=0)
    config = _tands(recompute_iterations=30, global_exploration=True)
    restored = TrackAndStopConfig.__from_dict__(config.__to_dict__())
    assert restored.__to_dict__() == config.__to_dict__() and restored.recompute_iterations == 30
    assert restored.warm_ascent.iterations == 30 and restored.warm_ascent.averaging is True


def test_only_the_first_recompute_runs_the_full_budget(monkeypatch):
    calls = []
    original = NSTandSModule.optimal_weights

    def recording(means, config, sigma2, warm_start=None):
        calls.append((config.iterations, warm_start is None))
        return original(means, config, sigma2, warm_start=warm_start)

    monkeypatch.setattr(NSTandSModule, 'optimal_weights', recording)
    means = np.array([[0.52, 0.6], [0.5, 0.7]])
    stage = TrackAndStopStage(np.zeros((2, 2)), np.zeros((2, 2)), lambda i, j: float(means[i, j]), 0.01, 1.0,
                              _tands(recompute_period=100, iterations=300, recompute_iterations=20), 2.0,
                              stage_cap=450)
    with pytest.raises(RunFailure):
        stage.run()
    assert len(calls) >= 2
    assert calls[0] == (300, True)
    assert all(call == (20, False) for call in calls[1:])


def test_ns_tands_matches_greedy_on_well_separated_points():
    points = PointSet(SPACED)
    config = RunConfig(3, delta=0.01, tands=_tands())
    solver = NSTandS(OracleSession(points, 'ns', noise_sigma2=0.01, seed=2), config)
    result = solver.run()
    assert list(result.centers) == [0, 4, 2]
    counts = solver.counts
    assert counts[[1, 2, 3, 4], 0].min() >= 1
    assert counts[[1, 2, 3], 4].min() >= 1
    assert counts.sum() == result.ledger.total


def test_ns_tands_on_bernoulli_distances():
    matrix = DistanceMatrix(PointSet(SPACED).distance_matrix())
    result = ns_tands(OracleSession(matrix, 'bernoulli', seed=4),
                      RunConfig(3, delta=0.05, tands=_tands(global_exploration=True)))
    assert list(result.centers) == [0, 4, 2]


def test_ns_tands_rejects_ds_sessions():
    with pytest.raises(OracleError):
        NSTandS(OracleSession(PointSet(SPACED), 'ds', seed=0), RunConfig(2))


def test_ns_tands_tie_hits_the_stage_cap():
    twins = PointSet([[-0.5], [0.5], [0.5]])
    with pytest.raises(RunFailure):
        ns_tands(OracleSession(twins, 'ns', noise_sigma2=0.01, seed=0),
                 RunConfig(2, stage_cap=300, tands=_tands(recompute_period=100, iterations=100)))


def test_maximin_bandit_validation():
    with pytest.raises(ParameterError):
        MaximinBandit([[0.1, 0.2]])
    with pytest.raises(ParameterError):
        MaximinBandit([[0.1], [np.inf]])
    with pytest.raises(ParameterError):
        MaximinBandit([[0.1], [0.2]], sigma2=0.0)
    assert MaximinBandit([[0.45, 0.5], [0.35, 0.6]]).maximin_box == 0


@pytest.mark.slow
def test_maximin_bandit_finds_the_best_box():
    bandit = MaximinBandit(THREE_BOX_MEANS, sigma2=0.01, delta=0.05, seed=11)
    box, queries = bandit.run()
    assert box == bandit.maximin_box == 0
    assert queries == bandit.counts.sum()


@pytest.mark.slow
def test_default_maximin_bandit_on_unit_noise():
    found = 0
    for seed in range(20):
        bandit = MaximinBandit(THREE_BOX_MEANS, sigma2=1.0, delta=0.05, seed=seed)
        box, queries = bandit.run()
        assert 0 < queries == bandit.counts.sum()
        found += box == 0
    assert found >= 19
