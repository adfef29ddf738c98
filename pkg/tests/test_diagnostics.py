import csv
import math
import warnings

import numpy as np
import pytest

import PyKCenter.common as common
from PyKCenter.Dataset import generate_rademacher
from PyKCenter.Confidence import ci_iterated_log
from PyKCenter.MaximinOptimizer import AscentConfig
from PyKCenter.Diagnostics import GreedyTrajectory, HardnessReport, hardness_term, hardness_terms, log_log_factor, \
    fact_bound, fact_search, calibrate_constant, dsucb_upper_bound, lower_bound, stage_means, tands_bound, \
    is_rademacher, hardness_report, DEFAULT_GAPS
from PyKCenter.Exceptions import ParameterError, KCenterWarning


@pytest.fixture
def line_trajectory(line_points) -> GreedyTrajectory:
    return GreedyTrajectory.from_source(line_points, 2)


def test_trajectory_on_the_line(line_trajectory):
    assert line_trajectory.centers == [0, 2]
    assert line_trajectory.bottlenecks == [1.0]
    assert line_trajectory.nearest_distance(1, 1) == pytest.approx(0.25)
    assert line_trajectory.nearest_center(1, 2) == 0
    assert line_trajectory.is_unique()
    assert (line_trajectory.n, line_trajectory.k) == (3, 2)


def test_hardness_terms_on_the_line(line_trajectory):
    assert hardness_term(line_trajectory, 1, 0, 1) == pytest.approx(0.75)
    terms = hardness_terms(line_trajectory)
    assert sorted(terms) == [(1, 0, 1), (2, 0, 1)]
    assert terms[(2, 0, 1)] == 0.0
    with pytest.raises(TypeError):
        hardness_terms([0, 2])


def test_log_log_factor():
    assert log_log_factor(0.75) == 1.0
    assert log_log_factor(0.01) == pytest.approx(math.log(2.0 * math.log(200.0)))


def test_fact_search_finds_the_first_width_below_the_target():
    delta_prime = 0.001
    for gap in (0.5, 0.1):
        u = fact_search(gap, delta_prime)
        assert u > 1
        assert ci_iterated_log(u, delta_prime) <= gap / 8.0 < ci_iterated_log(u - 1, delta_prime)
    with pytest.raises(ParameterError):
        fact_search(0.0, delta_prime)


def test_calibrated_constant_dominates_the_search():
    delta_prime = 0.001
    c = calibrate_constant(delta_prime)
    assert c > 0
    for gap in DEFAULT_GAPS:
        assert fact_bound(float(gap), delta_prime, c) >= fact_search(float(gap), delta_prime) * (1 - 1e-12)
    with pytest.raises(ParameterError):
        fact_bound(0.1, 1.0)


def test_upper_bound_caps_each_arm_at_two_m(line_trajectory):
    # One non-center arm of gap 0.75 plus the center pair (2, 0) whose gap is zero.
    assert dsucb_upper_bound(line_trajectory, 1, 0.1, c=1.0) == pytest.approx(4.0)
    expected = math.log(9 / 0.1) / 0.75 ** 2 + 2000.0
    assert dsucb_upper_bound(line_trajectory, 1000, 0.1, c=1.0) == pytest.approx(expected)
    with pytest.raises(ParameterError):
        dsucb_upper_bound(line_trajectory, 1, 0.0)


def test_upper_bound_never_exceeds_the_capped_table(small_clusters):
    trajectory = GreedyTrajectory.from_source(small_clusters, 3)
    terms = (12 - 3) * 2 + 3
    assert 0 < dsucb_upper_bound(trajectory, 20, 0.1) <= 2 * 20 * terms


def test_lower_bound_vanishes_for_large_delta():
    trajectory = GreedyTrajectory.from_source(generate_rademacher(10, 200, seed=3), 3)
    assert lower_bound(trajectory, 200, 0.5) == 0.0
    small, large = lower_bound(trajectory, 200, 0.01), lower_bound(trajectory, 200, 0.1)
    assert small >= large > 0
    assert small <= 200 * (10 - 1) / 2
    with pytest.raises(ParameterError):
        lower_bound(trajectory, 200, 1.0)
    with pytest.raises(ParameterError):
        lower_bound(trajectory, 0, 0.1)


def test_lower_bound_is_capped_at_m_per_term():
    trajectory = GreedyTrajectory.from_source(generate_rademacher(10, 200, seed=0), 3)
    assert lower_bound(trajectory, 1, 0.1) <= (10 - 1) / 2
    assert lower_bound(trajectory, 1, 0.1) <= lower_bound(trajectory, 200, 0.1)


def test_lower_bound_stays_below_the_upper_bound_on_rademacher_data():
    delta, m, k = 0.1, 200, 3
    for seed in range(20):
        n = 6 + seed % 5
        trajectory = GreedyTrajectory.from_source(generate_rademacher(n, m, seed=seed), k)
        lb = lower_bound(trajectory, m, delta)
        assert 0 <= lb <= dsucb_upper_bound(trajectory, m, delta), "seed %d" % seed


def test_stage_means_and_tands_bound(line_trajectory):
    np.testing.assert_allclose(stage_means(line_trajectory, 1), [[0.25], [1.0]])
    config = AscentConfig(iterations=200)
    # Two single-arm boxes: T* = 8 sigma^2 / gap^2.
    assert tands_bound(line_trajectory, sigma2=0.25, config=config) == pytest.approx(2.0 / 0.75 ** 2)
    assert tands_bound(line_trajectory, 0.25, gamma=1.2, config=config) == pytest.approx(1.2 * 2.0 / 0.75 ** 2)
    with pytest.raises(ParameterError):
        tands_bound(line_trajectory, gamma=2.0)


def test_rademacher_detection(line_points, line_matrix):
    assert is_rademacher(generate_rademacher(5, 8, seed=0))
    assert not is_rademacher(line_points)
    assert not is_rademacher(line_matrix)


def test_report_on_rademacher_data_is_in_model():
    points = generate_rademacher(8, 100, seed=5)
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        report = hardness_report(points, 3, delta=0.1)
    assert report.in_model
    assert report.ub_value > 0 and report.lb_value > 0
    assert report.tstar_sum is None and report.constant > 0
    assert len(report.m_terms) == (8 - 1) * 1 + (8 - 2) * 2


def test_report_warns_out_of_model(line_points):
    with pytest.warns(KCenterWarning):
        report = hardness_report(line_points, 2, c=1.0, sigma2=0.25, config=AscentConfig(iterations=200))
    assert not report.in_model
    assert report.tstar_sum == pytest.approx(2.0 / 0.75 ** 2)
    common.USE_WARNINGS = False
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        hardness_report(line_points, 2, c=1.0)


def test_report_csv(line_points, tmp_path):
    common.USE_WARNINGS = False
    report = hardness_report(line_points, 2, c=1.0)
    rows = report.csv_rows()
    assert rows[0] == ['term', 'v', 's', 'p', 'value']
    assert [row[0] for row in rows[1:]] == ['ub', 'lb', 'c', 'in_model', 'm', 'm']
    path = tmp_path / "hardness.csv"
    report.to_csv(str(path))
    with open(path, newline='') as file_handle:
        written = list(csv.reader(file_handle))
    assert written[-2] == ['m', '1', '0', '1', repr(0.75)]
    assert float(written[1][4]) == report.ub_value
    restored = HardnessReport.__from_dict__(report.__to_dict__())
    assert restored.m_terms == report.m_terms and restored.in_model is False
