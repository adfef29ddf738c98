import csv

import pytest

from PyKCenter.PointSet import PointSet
from PyKCenter.DistanceMatrix import DistanceMatrix
from PyKCenter.OracleSession import OracleSession
from PyKCenter.RunConfig import RunConfig
from PyKCenter.Confidence import CIConfig, CIFamily
from PyKCenter.GreedyExact import greedy_exact, naive_query_total, matches_greedy
from PyKCenter.DSUCB import DSUCB, ds_ucb
from PyKCenter.RandomSampling import random_sampling
from PyKCenter.DSTS import DSTS, ds_ts
from PyKCenter.NSTS import NSTS, ns_ts
from PyKCenter.Exceptions import OracleError, ParameterError, RunFailure


@pytest.fixture
def spaced_points() -> PointSet:
    """Greedy from 0 with k = 3 picks 4 (gap 0.51) then 2 (gap 0.16)."""
    return PointSet([[-0.5], [-0.3], [0.0], [0.2], [0.5]])


def _conservative(k: int, **changes) -> RunConfig:
    return RunConfig(k, delta=0.01, ci=CIConfig(CIFamily.ITERATED_LOG), **changes)


def test_zero_max_pulls_is_exact_greedy(small_clusters):
    solver = DSUCB(OracleSession(small_clusters, 'ds', seed=0), RunConfig(3, max_pulls=0))
    result = solver.run()
    assert list(result.centers) == list(greedy_exact(small_clusters, 3).centers)
    assert result.ledger.total == naive_query_total(12, 20, 3)
    assert all(arm.exact for arm in solver.arms.values())


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_ds_ucb_matches_greedy_on_clusters(small_clusters, seed):
    result = ds_ucb(OracleSession(small_clusters, 'ds', seed=seed), _conservative(3))
    assert matches_greedy(small_clusters, result)
    assert result.ledger.total == sum(result.ledger.per_stage)
    assert [stage.center for stage in result.stages] == list(result.centers)[1:]


def test_ds_ucb_charges_no_more_than_an_exact_arm_table(small_clusters):
    result = ds_ucb(OracleSession(small_clusters, 'ds', seed=4), _conservative(3))
    # Each arm costs at most max_pulls samples plus m for the fallback.
    assert result.ledger.total <= (20 + 20) * (11 + 10)


def test_solvers_on_well_separated_points(spaced_points):
    expected = [0, 4, 2]
    assert list(greedy_exact(spaced_points, 3).centers) == expected
    assert list(ds_ucb(OracleSession(spaced_points, 'ds', seed=1), RunConfig(3)).centers) == expected
    assert list(ds_ts(OracleSession(spaced_points, 'ds', seed=1), RunConfig(3, z=0.99)).centers) == expected
    assert list(ns_ts(OracleSession(spaced_points, 'ns', noise_sigma2=0.01, seed=1),
                      RunConfig(3, delta=0.01, z=0.99)).centers) == expected
    assert list(ns_ts(OracleSession(spaced_points, 'ns', noise_sigma2=0.0, seed=1),
                      RunConfig(3, z=0.0)).centers) == expected
    assert list(random_sampling(OracleSession(spaced_points, 'ns', noise_sigma2=0.01, seed=1),
                                RunConfig(3, delta=0.01)).centers) == expected


def test_bernoulli_sessions_on_a_distance_matrix(spaced_points):
    matrix = DistanceMatrix(spaced_points.distance_matrix())
    for solver in (ns_ts, random_sampling):
        result = solver(OracleSession(matrix, 'bernoulli', seed=3), RunConfig(3, delta=0.01, z=0.5))
        assert list(result.centers) == [0, 4, 2]


def test_ds_ts_matches_greedy_on_clusters(small_clusters):
    result = ds_ts(OracleSession(small_clusters, 'ds', seed=5), RunConfig(3, delta=0.01, z=0.99))
    assert matches_greedy(small_clusters, result)


def test_thompson_posterior_families(small_clusters):
    assert DSTS(OracleSession(small_clusters, 'ds', seed=0), RunConfig(2)).posterior_family == 'beta'
    assert NSTS(OracleSession(small_clusters, 'ns', 0.01, seed=0), RunConfig(2)).posterior_family == 'gaussian'
    assert NSTS(OracleSession(small_clusters, 'ns', 0.01, seed=0),
                RunConfig(2, ts_posterior='beta')).posterior_family == 'beta'
    solver = DSTS(OracleSession(small_clusters, 'ds', seed=0), RunConfig(2))
    assert solver.ci.family == CIFamily.KL_RACING
    assert solver.ci.delta_prime == pytest.approx(0.1 / 144)


def test_seeded_runs_repeat(small_clusters):
    config = RunConfig(3, delta=0.05, first_center='random')
    first = ds_ucb(OracleSession(small_clusters, 'ds', seed=9), config)
    second = ds_ucb(OracleSession(small_clusters, 'ds', seed=9), config)
    assert list(first.centers) == list(second.centers)
    assert first.ledger == second.ledger


def test_model_mismatch_is_rejected(small_clusters, line_matrix):
    with pytest.raises(OracleError):
        DSUCB(OracleSession(small_clusters, 'ns', 0.01, seed=0), RunConfig(2))
    with pytest.raises(OracleError):
        ds_ts(OracleSession(line_matrix, 'bernoulli', seed=0), RunConfig(2))
    with pytest.raises(OracleError):
        NSTS(OracleSession(small_clusters, 'ds', seed=0), RunConfig(2))


def test_k_and_first_center_must_fit(line_points):
    with pytest.raises(ParameterError):
        DSUCB(OracleSession(line_points, 'ds', seed=0), RunConfig(4))
    with pytest.raises(ParameterError):
        DSUCB(OracleSession(line_points, 'ds', seed=0), RunConfig(2, first_center=3))


def test_an_unbreakable_tie_hits_the_stage_cap():
    twins = PointSet([[-0.5], [0.5], [0.5]])
    with pytest.raises(RunFailure) as caught:
        ns_ts(OracleSession(twins, 'ns', noise_sigma2=0.01, seed=0), RunConfig(2, stage_cap=500))
    assert caught.value.stage == 1


def test_dump_arm_table(spaced_points, tmp_path):
    solver = DSUCB(OracleSession(spaced_points, 'ds', seed=0), RunConfig(3))
    solver.run()
    path = tmp_path / "arms.csv"
    solver.dump_arm_table(str(path))
    with open(path, newline='') as file_handle:
        rows = list(csv.reader(file_handle))
    assert rows[0] == ['v', 's', 't', 'd_hat', 'L', 'U']
    assert len(rows) - 1 == len(solver.arms) == 4 + 3


def test_noiseless_ns_ts_resolves_within_five_rounds(reference_points):
    result = ns_ts(OracleSession(reference_points, 'ns', noise_sigma2=0.0, seed=0), RunConfig(4, z=0.0))
    assert list(result.centers) == list(greedy_exact(reference_points, 4).centers)
    assert len(result.stages) == 3
    assert all(stage.rounds <= 5 for stage in result.stages)


def test_stopping_margin_rises_over_most_windows(reference_points):
    windows = rising = 0
    for seed in (0, 1):
        solver = DSUCB(OracleSession(reference_points, 'ds', seed=seed), _conservative(4))
        result = solver.run()
        traces = solver.margin_trace
        assert [len(trace) for trace in traces] == [stage.rounds for stage in result.stages]
        for trace in traces:
            for start in range(len(trace) - 100):
                windows += 1
                rising += trace[start + 100] >= trace[start]
    assert windows > 0
    assert rising >= 0.95 * windows
