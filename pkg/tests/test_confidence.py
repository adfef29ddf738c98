import math

import numpy as np
import pytest

from PyKCenter.Confidence import kl_bernoulli, kl_gaussian, ci_iterated_log, ci_calpha, kl_racing_threshold, \
    kl_racing_bounds, ci_kl_racing, ci_kl_racing_gaussian, CIFamily, CIConfig, UNBOUNDED
from PyKCenter.Exceptions import ParameterError, ConfidenceError


def test_kl_bernoulli_values():
    assert kl_bernoulli(0.5, 0.5) == 0.0
    assert kl_bernoulli(0.0, 0.5) == pytest.approx(math.log(2.0))
    assert kl_bernoulli(0.3, 0.6) == pytest.approx(0.3 * math.log(0.5) + 0.7 * math.log(0.7 / 0.4))
    assert kl_bernoulli(0.5, 1.0) == math.inf
    assert kl_bernoulli(1.0, 1.0) == 0.0


def test_kl_gaussian():
    assert kl_gaussian(0.2, 0.6, sigma2=0.5) == pytest.approx(0.16)
    assert kl_gaussian(0.6, 0.2) == kl_gaussian(0.2, 0.6)


def test_iterated_log_width():
    expected = math.sqrt(2.0 * 2.0 * math.log(125.0 * math.log(112.0) / 0.001) / 100.0)
    assert ci_iterated_log(100, 0.001) == pytest.approx(expected)
    assert ci_iterated_log(0, 0.001) == UNBOUNDED
    widths = ci_iterated_log(np.array([0, 10, 100, 1000]), 0.001)
    assert widths[0] == UNBOUNDED
    assert widths[1] > widths[2] > widths[3]
    with pytest.raises(ParameterError):
        ci_iterated_log(10, 1.5)


def test_calpha_width():
    assert ci_calpha(1, n=10, delta=0.1, c_alpha=0.1) == pytest.approx(math.sqrt(0.1 * math.log(1001.0)))
    assert ci_calpha(0, n=10, delta=0.1) == UNBOUNDED
    assert ci_calpha(50, 10, 0.1, 0.2) == pytest.approx(math.sqrt(2.0) * ci_calpha(50, 10, 0.1, 0.1))
    with pytest.raises(ParameterError):
        ci_calpha(5, 10, 0.1, 0.0)


def test_kl_racing_bounds_solve_the_level_set():
    threshold = kl_racing_threshold(40, 0.001)
    upper, lower = kl_racing_bounds(0.3, 40, threshold)
    assert 0.0 < lower < 0.3 < upper < 1.0
    assert 40 * kl_bernoulli(0.3, upper) == pytest.approx(threshold, rel=1e-6)
    assert 40 * kl_bernoulli(0.3, lower) == pytest.approx(threshold, rel=1e-6)
    wider_upper, wider_lower = kl_racing_bounds(0.3, 10, threshold)
    assert wider_upper > upper and wider_lower < lower


def test_kl_racing_bounds_at_the_edges():
    assert kl_racing_bounds(0.0, 10, 2.0)[1] == 0.0
    assert kl_racing_bounds(1.0, 10, 2.0)[0] == 1.0
    assert kl_racing_bounds(0.4, 10, 0.0) == (0.4, 0.4)
    assert ci_kl_racing(0.4, 0, 0.01) == (UNBOUNDED, -UNBOUNDED)


def test_gaussian_kl_racing_closed_form():
    upper, lower = ci_kl_racing_gaussian(0.5, 25, 0.001, sigma2=0.04)
    width = math.sqrt(2.0 * 0.04 * kl_racing_threshold(25, 0.001) / 25)
    assert (upper, lower) == (pytest.approx(0.5 + width), pytest.approx(0.5 - width))
    assert 25 * kl_gaussian(0.5, upper, 0.04) == pytest.approx(kl_racing_threshold(25, 0.001))


def test_ci_config_intervals():
    config = CIConfig('c-alpha', delta_prime=0.001, c_alpha=0.1)
    assert config.family == CIFamily.ITERATED_LOG_CALPHA
    lower, upper = config.interval(0.5, 10)
    width = math.sqrt(0.1 * math.log(1.0 + (1.0 + math.log(10.0)) * 1000.0) / 10.0)
    assert (lower, upper) == (pytest.approx(0.5 - width), pytest.approx(0.5 + width))
    assert config.interval(0.95, 1) == (pytest.approx(0.95 - ci_calpha(1, 1, 0.001)), 1.0)
    assert config.interval(0.5, 0) == (-UNBOUNDED, UNBOUNDED)
    lower, upper = config.interval(0.5, 10, sigma2=0.01)
    assert upper - 0.5 == pytest.approx(width * 0.2)


def test_ci_config_families_and_validation():
    assert CIConfig('iterated-log', 0.01).interval(0.5, 100)[1] == \
        pytest.approx(min(0.5 + ci_iterated_log(100, 0.01), 1.0))
    kl_lower, kl_upper = CIConfig('kl-racing', 0.01).interval(0.3, 40)
    assert (kl_upper, kl_lower) == pytest.approx(ci_kl_racing(0.3, 40, 0.01))
    with pytest.raises(ConfidenceError):
        CIConfig().interval(0.5, 10)
    with pytest.raises(ParameterError):
        CIConfig('hoeffding')
    with pytest.raises(ParameterError):
        CIConfig(kl_alpha=1.0)
    with pytest.raises(ParameterError):
        CIConfig(kl_alpha=2.0, k1=1.5)
    config = CIConfig('kl-racing').with_delta_prime(0.01)
    assert CIConfig.__from_dict__(config.__to_dict__()) == config
