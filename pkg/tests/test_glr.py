import itertools
import math

import numpy as np
import pytest

from PyKCenter.GLR import glr_statistic, pairwise_glr, stop_statistic_z, best_box
from PyKCenter.Exceptions import ParameterError


def test_two_arm_example():
    means = np.array([[0.8, 0.2]])
    counts = np.array([[10, 30]])
    assert glr_statistic(0, 0, 0, 1, means, counts) == pytest.approx(1.35)
    assert glr_statistic(0, 1, 0, 0, means, counts) == pytest.approx(-1.35)


def _nested_stop_statistic(means, counts) -> float:
    a, b = means.shape
    expected = -math.inf
    for i in range(a):
        worst = math.inf
        for i2 in range(a):
            if i2 == i:
                continue
            value = max(min(glr_statistic(i, j, i2, j2, means, counts) for j in range(b)) for j2 in range(b))
            worst = min(worst, value)
        expected = max(expected, worst)
    return expected


def test_antisymmetry_is_exact():
    rng = np.random.default_rng(0)
    means = rng.uniform(0.0, 1.0, size=(3, 4))
    counts = rng.integers(1, 50, size=(3, 4))
    statistic = pairwise_glr(means, counts, sigma2=0.3)
    np.testing.assert_array_equal(statistic, -statistic.transpose(2, 3, 0, 1))
    for i, j, i2, j2 in itertools.product(range(3), range(4), range(3), range(4)):
        assert statistic[i, j, i2, j2] == pytest.approx(glr_statistic(i, j, i2, j2, means, counts, 0.3))
        assert glr_statistic(i2, j2, i, j, means, counts, 0.3) == -glr_statistic(i, j, i2, j2, means, counts, 0.3)


def test_antisymmetry_on_random_tables():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        a, b = (int(size) for size in rng.integers(1, 5, size=2))
        means = rng.uniform(0.0, 1.0, size=(a, b))
        # Some tables carry a tied pair.
        if rng.random() < 0.25:
            means[a - 1, b - 1] = means[0, 0]
        counts = rng.integers(1, 200, size=(a, b))
        statistic = pairwise_glr(means, counts, sigma2=float(rng.uniform(0.05, 2.0)))
        np.testing.assert_array_equal(statistic, -statistic.transpose(2, 3, 0, 1))
        assert np.all(np.diagonal(statistic.reshape(a * b, a * b)) == 0.0)


def test_stop_statistic_matches_the_nested_loops():
    rng = np.random.default_rng(1)
    means = rng.uniform(0.0, 1.0, size=(3, 3))
    counts = rng.integers(1, 40, size=(3, 3))
    assert stop_statistic_z(means, counts) == pytest.approx(_nested_stop_statistic(means, counts))


def test_stop_statistic_on_random_four_by_three_tables():
    rng = np.random.default_rng(3)
    for _ in range(200):
        means = rng.uniform(0.0, 1.0, size=(4, 3))
        counts = rng.integers(1, 100, size=(4, 3))
        assert stop_statistic_z(means, counts) == pytest.approx(_nested_stop_statistic(means, counts), rel=1e-12)


def test_stop_statistic_grows_with_samples():
    means = np.array([[0.6, 0.7], [0.3, 0.4]])
    few = stop_statistic_z(means, np.full((2, 2), 5))
    many = stop_statistic_z(means, np.full((2, 2), 500))
    assert 0 < few < many
    assert many == pytest.approx(100 * few)
    assert stop_statistic_z(np.array([[0.1, 0.2]]), np.array([[1, 1]])) == math.inf


def test_unpulled_arms_are_rejected():
    means = np.array([[0.5, 0.4], [0.3, 0.2]])
    with pytest.raises(ParameterError):
        glr_statistic(0, 0, 1, 1, means, np.array([[1, 1], [1, 0]]))
    with pytest.raises(ParameterError):
        pairwise_glr(means, np.array([[1, 1], [1, 0]]))


def test_best_box_is_the_maximin_row():
    assert best_box(np.array([[0.45, 0.5, 0.55], [0.35, 0.4, 0.6], [0.3, 0.47, 0.52]])) == 0
    assert best_box(np.array([[0.2, 0.9], [0.3, 0.3]])) == 1
    assert best_box(np.array([[0.3, 0.5], [0.5, 0.3]])) == 0
