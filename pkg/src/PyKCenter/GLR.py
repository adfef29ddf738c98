#!/usr/bin/env python3
"""
    File: GLR.py
    Generalized likelihood ratio statistics for Gaussian arm tables (boxes x arms).
"""
import math
import numpy as np
try:
    import common
    from Exceptions import ParameterError
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ParameterError

# Version check:
common.__version_check__()


def _merged_cost(mean_1: float, count_1: float, mean_2: float, count_2: float, sigma2: float) -> float:
    """t_1 kl(mean_1, rho) + t_2 kl(mean_2, rho), rho the count-weighted mean."""
    rho = (count_1 * mean_1 + count_2 * mean_2) / (count_1 + count_2)
    gap_1 = mean_1 - rho
    gap_2 = mean_2 - rho
    return count_1 * (gap_1 * gap_1) / (2.0 * sigma2) + count_2 * (gap_2 * gap_2) / (2.0 * sigma2)


def glr_statistic(i: int, j: int, i2: int, j2: int,
                  means: np.ndarray, counts: np.ndarray, sigma2: float = 1.0) -> float:
    """
    The GLR statistic for mean[i, j] >= mean[i2, j2]. Positive when the first mean is the larger one, and
    Z(i2, j2, i, j) = -Z(i, j, i2, j2) exactly.
    :param i: Int: First box.
    :param j: Int: First arm.
    :param i2: Int: Second box.
    :param j2: Int: Second arm.
    :param means: np.ndarray: Empirical means, boxes x arms.
    :param counts: np.ndarray: Pull counts, boxes x arms.
    :param sigma2: Float: Reward variance.
    :raises ParameterError: If either arm was never pulled.
    :return: Float
    """
    count_1, count_2 = float(counts[i, j]), float(counts[i2, j2])
    if count_1 <= 0 or count_2 <= 0:
        raise ParameterError("GLR statistic needs both arms pulled, got counts %r and %r." % (count_1, count_2))
    variance = max(sigma2, common.VARIANCE_FLOOR)
    mean_1, mean_2 = float(means[i, j]), float(means[i2, j2])
    if mean_1 == mean_2:
        return 0.0
    if mean_1 < mean_2:
        return -_merged_cost(mean_2, count_2, mean_1, count_1, variance)
    return _merged_cost(mean_1, count_1, mean_2, count_2, variance)


def pairwise_glr(means: np.ndarray, counts: np.ndarray, sigma2: float = 1.0) -> np.ndarray:
    """
    glr_statistic() for every pair of arms at once.
    :param means: np.ndarray: a x b empirical means.
    :param counts: np.ndarray: a x b pull counts, all >= 1.
    :param sigma2: Float: Reward variance.
    :return: np.ndarray: a x b x a x b array, entry [i, j, i2, j2].
    """
    mean = np.asarray(means, dtype=np.float64)
    count = np.asarray(counts, dtype=np.float64)
    if bool(np.any(count <= 0)):
        raise ParameterError("GLR statistic needs every arm pulled at least once.")
    variance = max(sigma2, common.VARIANCE_FLOOR)
    first_mean = mean[:, :, None, None]
    second_mean = mean[None, None, :, :]
    first_count = count[:, :, None, None]
    second_count = count[None, None, :, :]
    swap = first_mean < second_mean
    # Always merge from the larger mean so the mirrored entries are exact negations.
    high_mean = np.where(swap, second_mean, first_mean)
    low_mean = np.where(swap, first_mean, second_mean)
    high_count = np.where(swap, second_count, first_count)
    low_count = np.where(swap, first_count, second_count)
    rho = (high_count * high_mean + low_count * low_mean) / (high_count + low_count)
    gap_high = high_mean - rho
    gap_low = low_mean - rho
    cost = high_count * (gap_high * gap_high) / (2.0 * variance) + low_count * (gap_low * gap_low) / (2.0 * variance)
    # Equal means score exactly 0 so the diagonal and ties stay antisymmetric under rounding.
    return np.where(first_mean == second_mean, 0.0, np.where(swap, -cost, cost))


def stop_statistic_z(means: np.ndarray, counts: np.ndarray, sigma2: float = 1.0) -> float:
    """
    Z(t) = max over boxes i of min over rival boxes i2 of max over j2 of min over j of Z[i, j, i2, j2]. With a
    single box there is no rival and Z is +inf.
    :param means: np.ndarray: a x b empirical means.
    :param counts: np.ndarray: a x b pull counts, all >= 1.
    :param sigma2: Float: Reward variance.
    :return: Float
    """
    mean = np.asarray(means, dtype=np.float64)
    if mean.shape[0] < 2:
        return math.inf
    statistic = pairwise_glr(mean, counts, sigma2)
    against = statistic.min(axis=1).max(axis=2)
    np.fill_diagonal(against, np.inf)
    return float(against.min(axis=1).max())


def best_box(means: np.ndarray) -> int:
    """
    The empirical maximin box, lowest index on ties.
    :param means: np.ndarray: a x b empirical means.
    :return: Int
    """
    return int(np.argmax(np.asarray(means).min(axis=1)))
