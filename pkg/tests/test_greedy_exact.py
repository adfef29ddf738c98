import numpy as np
import pytest

from PyKCenter.GreedyExact import greedy_exact, farthest_first, greedy_gaps, naive_query_total, matches_greedy
from PyKCenter.CenterSet import CenterSet
from PyKCenter.QueryLedger import QueryLedger
from PyKCenter.RunResult import RunResult
from PyKCenter.RunConfig import RunConfig
from PyKCenter.Exceptions import ParameterError


def test_greedy_on_the_line(line_points):
    assert list(greedy_exact(line_points, 2).centers) == [0, 2]
    assert list(greedy_exact(line_points, 3).centers) == [0, 2, 1]
    assert list(greedy_exact(line_points, 2, first_center=1).centers) == [1, 0]


def test_greedy_ledger_matches_the_naive_count(random_points):
    points = random_points(12, 9, 4)
    result = greedy_exact(points, 4)
    assert result.ledger.total == naive_query_total(12, 9, 4) == 9 * (11 + 10 + 9)
    assert result.ledger.per_stage == [99, 90, 81]
    assert [stage.center for stage in result.stages] == list(result.centers)[1:]
    assert all(stage.margin >= 0 for stage in result.stages)


def test_greedy_on_a_distance_matrix(line_matrix):
    result = greedy_exact(line_matrix, 3)
    assert list(result.centers) == [0, 2, 1]
    assert result.ledger.total == naive_query_total(3, 1, 3) == 3


def test_farthest_first_bottlenecks_decrease(random_points):
    points = random_points(20, 5, 6)
    centers, bottlenecks, snapshots = farthest_first(points.distance_matrix(), 6)
    assert len(set(centers)) == 6
    assert all(later <= earlier for earlier, later in zip(bottlenecks, bottlenecks[1:]))
    assert all(np.isneginf(snapshot[centers[:stage + 1]]).all() for stage, snapshot in enumerate(snapshots))


def test_greedy_gaps_on_the_line(line_points):
    distances = line_points.distance_matrix()
    assert greedy_gaps(distances, 2) == [pytest.approx(0.75)]
    assert greedy_gaps(distances, 3) == [pytest.approx(0.75)]
    assert greedy_gaps(distances, 2, first_center=1) == [0.0]
    assert greedy_gaps(distances, 1) == []


def test_greedy_rejects_bad_arguments(line_points):
    with pytest.raises(ParameterError):
        greedy_exact(line_points, 4)
    with pytest.raises(IndexError):
        greedy_exact(line_points, 2, first_center=3)
    with pytest.raises(TypeError):
        greedy_exact(line_points, 2.0)
    with pytest.raises(TypeError):
        greedy_exact(line_points.points, 2)


def test_k_equal_one_charges_nothing(line_points):
    result = greedy_exact(line_points, 1)
    assert list(result.centers) == [0]
    assert result.ledger.total == 0


def test_matches_greedy_sets_the_flag(line_points):
    ledger = QueryLedger(0, [])
    good = RunResult('ds-ucb', CenterSet([0, 2, 1]), ledger)
    bad = RunResult('ds-ucb', CenterSet([0, 1, 2]), ledger)
    assert matches_greedy(line_points, good) and good.matched_greedy
    assert not matches_greedy(line_points, bad) and bad.matched_greedy is False
    assert RunResult.__from_dict__(good.__to_dict__()).matched_greedy is True


def test_run_config_validation_and_replace():
    config = RunConfig(4, delta=0.1)
    assert config.delta_prime(10) == pytest.approx(0.001)
    assert config.replace(z=0.99).z == 0.99
    assert RunConfig.__from_dict__(config.__to_dict__()).__to_dict__() == config.__to_dict__()
    for bad in ({'k': 0}, {'k': 2, 'delta': 1.0}, {'k': 2, 'z': 1.5}, {'k': 2, 'first_center': 'middle'},
                {'k': 2, 'ts_posterior': 'poisson'}, {'k': 2, 'max_pulls': -1}):
        with pytest.raises(ParameterError):
            RunConfig(**bad)
    with pytest.raises(ParameterError):
        config.replace(gamma=2)
