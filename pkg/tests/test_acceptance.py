"""
End to end checks, mostly on the four-cluster reference instance (n = 40, m = 200, k = 4). Slow: run with -m slow.
"""
import numpy as np
import pytest

from PyKCenter.OracleSession import OracleSession
from PyKCenter.RunConfig import RunConfig
from PyKCenter.Confidence import ci_iterated_log
from PyKCenter.GreedyExact import greedy_exact, naive_query_total
from PyKCenter.Dataset import generate_rademacher, generate_triplet_matrix
from PyKCenter.Diagnostics import GreedyTrajectory, lower_bound
from PyKCenter.DSUCB import ds_ucb
from PyKCenter.DSTS import ds_ts
from PyKCenter.NSTS import ns_ts
from PyKCenter.NSTandS import ns_tands

pytestmark = pytest.mark.slow

SEEDS = range(20)
K = 4


def _totals(points, solver, config, model='ds', sigma2=0.0) -> list[int]:
    return [solver(OracleSession(points, model, sigma2, seed=seed), config).ledger.total for seed in SEEDS]


@pytest.mark.parametrize('solver, model, sigma2, config', [
    (ds_ucb, 'ds', 0.0, RunConfig(K)),
    (ds_ts, 'ds', 0.0, RunConfig(K, z=0.0)),
    (ds_ts, 'ds', 0.0, RunConfig(K, z=0.99)),
    (ns_ts, 'ns', 0.01, RunConfig(K, z=0.0)),
    (ns_ts, 'ns', 0.01, RunConfig(K, z=0.9)),
    (ns_tands, 'ns', 0.01, RunConfig(K)),
], ids=['ds-ucb', 'ds-ts', 'ds-ts-mixture', 'ns-ts', 'ns-ts-mixture', 'ns-tands'])
def test_solvers_reproduce_greedy(reference_points, solver, model, sigma2, config):
    expected = list(greedy_exact(reference_points, K).centers)
    matches = 0
    for seed in SEEDS:
        result = solver(OracleSession(reference_points, model, sigma2, seed=seed), config)
        matches += list(result.centers) == expected
    assert matches >= 18


def test_ds_ucb_saves_half_the_queries(reference_points):
    totals = _totals(reference_points, ds_ucb, RunConfig(K))
    assert np.median(totals) <= 0.5 * naive_query_total(40, 200, K)


def test_queries_grow_as_delta_shrinks(reference_points):
    medians = [np.median(_totals(reference_points, ds_ucb, RunConfig(K, delta=delta))) for delta in (0.3, 0.1, 0.01)]
    violations = [later for earlier, later in zip(medians, medians[1:]) if later < earlier]
    assert len(violations) <= 1
    for earlier, later in zip(medians, medians[1:]):
        assert later >= 0.95 * earlier


def test_mixture_sampling_is_no_worse(reference_points):
    greedy_ts = np.median(_totals(reference_points, ds_ts, RunConfig(K, z=0.0)))
    mixture = np.median(_totals(reference_points, ds_ts, RunConfig(K, z=0.99)))
    assert mixture <= 1.05 * greedy_ts


def test_iterated_log_interval_covers_every_round(reference_points):
    rng = np.random.default_rng(2024)
    points = reference_points.points
    horizon, delta_prime = 10 ** 4, 0.05
    rounds = np.arange(1, horizon + 1)
    widths = ci_iterated_log(rounds, delta_prime)
    covered = 0
    for _ in range(200):
        u, v = rng.choice(reference_points.n, size=2, replace=False)
        rewards = (points[u] - points[v]) ** 2
        exact = float(np.mean(rewards))
        running = np.cumsum(rewards[rng.integers(reference_points.m, size=horizon)]) / rounds
        covered += bool(np.all(np.abs(running - exact) <= widths))
    assert covered >= 0.93 * 200


def test_lower_bound_stays_below_measured_queries():
    delta, m, k = 0.1, 200, 3
    for instance in range(20):
        points = generate_rademacher(6 + instance % 5, m, seed=instance)
        bound = lower_bound(GreedyTrajectory.from_source(points, k), m, delta)
        totals = [ds_ucb(OracleSession(points, 'ds', seed=seed), RunConfig(k, delta=delta)).ledger.total
                  for seed in range(5)]
        assert bound <= np.median(totals), "instance %d" % instance


def test_track_and_stop_needs_fewer_queries_on_a_triplet_matrix():
    matrix = generate_triplet_matrix(15, clusters=5, seed=0)
    expected = list(greedy_exact(matrix, 5).centers)
    thompson = [ns_ts(OracleSession(matrix, 'bernoulli', seed=seed), RunConfig(5, z=0.0)) for seed in range(10)]
    tracking = [ns_tands(OracleSession(matrix, 'bernoulli', seed=seed), RunConfig(5)) for seed in range(10)]
    for runs in (thompson, tracking):
        assert sum(list(result.centers) == expected for result in runs) >= 8
    assert np.median([result.ledger.total for result in tracking]) < \
        np.median([result.ledger.total for result in thompson])
