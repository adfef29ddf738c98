#!/usr/bin/env python3
"""
    File: Confidence.py
    KL divergences and the any-time confidence interval families.
"""
import math
from enum import Enum
from typing import Optional
import numpy as np
from scipy.optimize import bisect
from scipy.special import xlogy
try:
    from common import __type_error__, is_number
    import common
    from Exceptions import ParameterError, ConfidenceError
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__, is_number
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ParameterError, ConfidenceError

# Version check:
common.__version_check__()
# Define Self:
try:
    from typing import Self
except ImportError:
    try:
        from typing_extensions import Self
    except (ModuleNotFoundError, ImportError):
        try:
            from typing import TypeVar
            Self = TypeVar("Self", bound="CIConfig")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)

# Width of an interval with no samples:
UNBOUNDED: float = math.inf
BISECTION_TOLERANCE: float = 1e-12
BISECTION_MAX_ITERATIONS: int = 100


########################################################################################################################
# KL divergences:
########################################################################################################################
def kl_bernoulli(x: float, y: float) -> float:
    """
    KL divergence between Bernoulli(x) and Bernoulli(y), with 0 log 0 = 0. Infinite when y is 0 or 1 and x is not.
    :param x: Float: First mean, in [0, 1].
    :param y: Float: Second mean, in [0, 1].
    :return: Float: A value >= 0, possibly inf.
    """
    with np.errstate(divide='ignore', invalid='ignore'):
        value = (xlogy(x, x) - xlogy(x, y)) + (xlogy(1.0 - x, 1.0 - x) - xlogy(1.0 - x, 1.0 - y))
    value = float(value)
    if math.isnan(value):
        return math.inf
    return max(value, 0.0)


def kl_gaussian(x: float, y: float, sigma2: float = 1.0) -> float:
    """
    KL divergence between two Gaussians with equal variance sigma2: (x - y)^2 / (2 sigma2).
    :param x: Float: First mean.
    :param y: Float: Second mean.
    :param sigma2: Float: The shared variance.
    :return: Float
    """
    difference = x - y
    return difference * difference / (2.0 * max(sigma2, common.VARIANCE_FLOOR))


########################################################################################################################
# Interval widths:
########################################################################################################################
def _as_result(value: np.ndarray) -> float | np.ndarray:
    return float(value) if np.ndim(value) == 0 else value


def ci_iterated_log(t: int | np.ndarray, delta_prime: float) -> float | np.ndarray:
    """
    Any-time half-width for [0, 1] rewards: sqrt(2 beta / t) with beta = 2 log(125 log(1.12 t) / delta').
    :param t: Int | np.ndarray: Pull count(s), >= 0.
    :param delta_prime: Float: Per-arm error budget in (0, 1).
    :return: Float | np.ndarray: The half-width, UNBOUNDED where t == 0.
    """
    if not 0 < delta_prime < 1:
        raise ParameterError("delta_prime must be in (0, 1), got %r." % delta_prime)
    pulls = np.asarray(t, dtype=np.float64)
    with np.errstate(divide='ignore', invalid='ignore'):
        beta = 2.0 * np.log(125.0 * np.log(1.12 * pulls) / delta_prime)
        width = np.sqrt(2.0 * beta / pulls)
    return _as_result(np.where(pulls > 0, width, UNBOUNDED))


def ci_calpha(t: int | np.ndarray, n: int, delta: float, c_alpha: float = common.DEFAULT_C_ALPHA
              ) -> float | np.ndarray:
    """
    The tuned half-width sqrt(C_alpha log(1 + (1 + log t) n^2 / delta) / t).
    :param t: Int | np.ndarray: Pull count(s), >= 0.
    :param n: Int: Number of points.
    :param delta: Float: Overall error budget.
    :param c_alpha: Float: Width multiplier, > 0.
    :return: Float | np.ndarray: The half-width, UNBOUNDED where t == 0.
    """
    if c_alpha <= 0:
        raise ParameterError("c_alpha must be > 0, got %r." % c_alpha)
    return _calpha_width(t, float(n) * float(n) / delta, c_alpha)


def _calpha_width(t: int | np.ndarray, inverse_delta_prime: float, c_alpha: float) -> float | np.ndarray:
    pulls = np.asarray(t, dtype=np.float64)
    with np.errstate(divide='ignore', invalid='ignore'):
        width = np.sqrt(c_alpha * np.log(1.0 + (1.0 + np.log(pulls)) * inverse_delta_prime) / pulls)
    return _as_result(np.where(pulls > 0, width, UNBOUNDED))


def kl_racing_threshold(t: int, delta_prime: float,
                        kl_alpha: float = common.DEFAULT_KL_ALPHA, k1: float = common.DEFAULT_K1) -> float:
    """
    The exploration threshold log(k1 t^alpha / delta').
    :param t: Int: Pull count, >= 1.
    :param delta_prime: Float: Per-arm error budget.
    :param kl_alpha: Float: Exponent, > 1.
    :param k1: Float: Constant, > 1 + 1 / (alpha - 1).
    :return: Float
    """
    return math.log(k1) + kl_alpha * math.log(t) - math.log(delta_prime)


def kl_racing_bounds(d_hat: float, t: int, threshold: float) -> tuple[float, float]:
    """
    Solve U = max{q : t kl(d_hat, q) <= threshold} and L = min{q : ...} by bisection.
    :param d_hat: Float: Empirical mean, in [0, 1].
    :param t: Int: Pull count, >= 1.
    :param threshold: Float: The right hand side.
    :return: Tuple[float, float]: (U, L), U in [d_hat, 1], L in [0, d_hat].
    """
    mean = min(max(float(d_hat), 0.0), 1.0)
    if threshold <= 0:
        return mean, mean
    level = threshold / float(t)

    def gap(q: float) -> float:
        return kl_bernoulli(mean, q) - level

    high_end = 1.0 - common.BOUNDARY_CLAMP
    if mean >= high_end or gap(high_end) <= 0:
        upper = 1.0
    else:
        upper = bisect(gap, mean, high_end, xtol=BISECTION_TOLERANCE, maxiter=BISECTION_MAX_ITERATIONS,
                       disp=False)
    low_end = common.BOUNDARY_CLAMP
    if mean <= low_end or gap(low_end) <= 0:
        lower = 0.0
    else:
        lower = bisect(gap, low_end, mean, xtol=BISECTION_TOLERANCE, maxiter=BISECTION_MAX_ITERATIONS,
                       disp=False)
    return float(upper), float(lower)


def ci_kl_racing(d_hat: float, t: int, delta_prime: float,
                 kl_alpha: float = common.DEFAULT_KL_ALPHA, k1: float = common.DEFAULT_K1) -> tuple[float, float]:
    """
    KL-racing bounds for a [0, 1] reward.
    :param d_hat: Float: Empirical mean.
    :param t: Int: Pull count.
    :param delta_prime: Float: Per-arm error budget.
    :param kl_alpha: Float: Exponent, > 1.
    :param k1: Float: Constant.
    :return: Tuple[float, float]: (U, L); (inf, -inf) when t == 0.
    """
    if t <= 0:
        return UNBOUNDED, -UNBOUNDED
    return kl_racing_bounds(d_hat, t, kl_racing_threshold(t, delta_prime, kl_alpha, k1))


def ci_kl_racing_gaussian(d_hat: float, t: int, delta_prime: float, sigma2: float,
                          kl_alpha: float = common.DEFAULT_KL_ALPHA, k1: float = common.DEFAULT_K1
                          ) -> tuple[float, float]:
    """
    KL-racing bounds for a Gaussian reward of variance sigma2, where the bisection has the closed form
    d_hat +/- sqrt(2 sigma2 log(k1 t^alpha / delta') / t).
    :return: Tuple[float, float]: (U, L); (inf, -inf) when t == 0.
    """
    if t <= 0:
        return UNBOUNDED, -UNBOUNDED
    threshold = max(kl_racing_threshold(t, delta_prime, kl_alpha, k1), 0.0)
    width = math.sqrt(2.0 * max(sigma2, common.VARIANCE_FLOOR) * threshold / t)
    return d_hat + width, d_hat - width


########################################################################################################################
# Configuration:
########################################################################################################################
class CIFamily(Enum):
    """Confidence interval families."""
    ITERATED_LOG = 'iterated-log'
    ITERATED_LOG_CALPHA = 'c-alpha'
    KL_RACING = 'kl-racing'


class CIConfig(object):
    """
    Which confidence interval a solver uses and its constants. delta_prime is normally filled in by the solver as
    delta / n^2.
    """
    def __init__(self,
                 family: CIFamily | str = CIFamily.ITERATED_LOG_CALPHA,
                 delta_prime: Optional[float] = None,
                 c_alpha: float = common.DEFAULT_C_ALPHA,
                 kl_alpha: float = common.DEFAULT_KL_ALPHA,
                 k1: Optional[float] = None,
                 ) -> None:
        """
        Initialize the config.
        :param family: CIFamily | str: The interval family.
        :param delta_prime: Optional[float]: Per-arm error budget in (0, 1).
        :param c_alpha: Float: Width multiplier for the c-alpha family.
        :param kl_alpha: Float: KL-racing exponent, > 1.
        :param k1: Optional[float]: KL-racing constant; defaults to 1 + 1 / (kl_alpha - 1) + 0.01.
        :raises ParameterError: If a constant is out of range.
        """
        if not isinstance(family, (CIFamily, str)):
            __type_error__("family", "CIFamily | str", family)
        elif delta_prime is not None and not is_number(delta_prime):
            __type_error__("delta_prime", "Optional[float]", delta_prime)
        elif not is_number(c_alpha):
            __type_error__("c_alpha", "float", c_alpha)
        elif not is_number(kl_alpha):
            __type_error__("kl_alpha", "float", kl_alpha)
        elif k1 is not None and not is_number(k1):
            __type_error__("k1", "Optional[float]", k1)
        if isinstance(family, str):
            try:
                family = CIFamily(family)
            except ValueError:
                raise ParameterError("unknown CI family '%s'." % family)
        if delta_prime is not None and not 0 < delta_prime < 1:
            raise ParameterError("delta_prime must be in (0, 1), got %r." % delta_prime)
        if c_alpha <= 0:
            raise ParameterError("c_alpha must be > 0, got %r." % c_alpha)
        if kl_alpha <= 1:
            raise ParameterError("kl_alpha must be > 1, got %r." % kl_alpha)
        if k1 is None:
            k1 = 1.0 + 1.0 / (kl_alpha - 1.0) + 0.01
        if k1 <= 1.0 + 1.0 / (kl_alpha - 1.0):
            raise ParameterError("k1 must exceed 1 + 1 / (kl_alpha - 1) = %r, got %r."
                                 % (1.0 + 1.0 / (kl_alpha - 1.0), k1))
        self._family: CIFamily = family
        self._delta_prime: Optional[float] = None if delta_prime is None else float(delta_prime)
        self._c_alpha: float = float(c_alpha)
        self._kl_alpha: float = float(kl_alpha)
        self._k1: float = float(k1)
        return

    def with_delta_prime(self, delta_prime: float) -> Self:
        """
        A copy with delta_prime set.
        :param delta_prime: Float: Per-arm error budget.
        :return: CIConfig
        """
        return CIConfig(self._family, delta_prime, self._c_alpha, self._kl_alpha, self._k1)

    def interval(self, d_hat: float, t: int, sigma2: Optional[float] = None) -> tuple[float, float]:
        """
        Lower and upper bound for an arm. Without sigma2 the reward is taken to lie in [0, 1] and the bounds are
        clipped to it; with sigma2 the reward is Gaussian with that variance.
        :param d_hat: Float: Empirical mean.
        :param t: Int: Pull count.
        :param sigma2: Optional[float]: Gaussian reward variance.
        :raises ConfidenceError: If delta_prime was never set.
        :return: Tuple[float, float]: (L, U); (-inf, inf) when t == 0.
        """
        if self._delta_prime is None:
            raise ConfidenceError("CIConfig.delta_prime is not set.")
        if t <= 0:
            return -UNBOUNDED, UNBOUNDED
        if self._family == CIFamily.KL_RACING:
            if sigma2 is None:
                upper, lower = ci_kl_racing(d_hat, t, self._delta_prime, self._kl_alpha, self._k1)
            else:
                upper, lower = ci_kl_racing_gaussian(d_hat, t, self._delta_prime, sigma2, self._kl_alpha, self._k1)
        else:
            if self._family == CIFamily.ITERATED_LOG:
                width = ci_iterated_log(t, self._delta_prime)
            else:
                width = _calpha_width(t, 1.0 / self._delta_prime, self._c_alpha)
            if sigma2 is not None:
                # [0, 1] rewards are 1/2 sub-Gaussian.
                width *= 2.0 * math.sqrt(sigma2)
            lower, upper = d_hat - width, d_hat + width
        if sigma2 is None:
            lower, upper = max(lower, 0.0), min(upper, 1.0)
        return lower, upper

    def __to_dict__(self) -> dict:
        """
        Create a JSON / Pickle friendly dict.
        :return: Dict
        """
        return {
            'family': self._family.value,
            'delta_prime': self._delta_prime,
            'c_alpha': self._c_alpha,
            'kl_alpha': self._kl_alpha,
            'k1': self._k1,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        """
        Load from a dict created by __to_dict__().
        :param from_dict: Dict: The dict to load from.
        :return: CIConfig
        """
        return cls(from_dict['family'], from_dict.get('delta_prime'), from_dict.get('c_alpha', common.DEFAULT_C_ALPHA),
                   from_dict.get('kl_alpha', common.DEFAULT_KL_ALPHA), from_dict.get('k1'))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CIConfig):
            return NotImplemented
        return self.__to_dict__() == other.__to_dict__()

    def __str__(self) -> str:
        return "CIConfig(%s)" % self._family.value

    @property
    def family(self) -> CIFamily:
        """
        The interval family.
        :return: CIFamily
        """
        return self._family

    @property
    def delta_prime(self) -> Optional[float]:
        """
        Per-arm error budget.
        :return: Optional[float]
        """
        return self._delta_prime

    @property
    def c_alpha(self) -> float:
        """
        Width multiplier of the c-alpha family.
        :return: Float
        """
        return self._c_alpha

    @property
    def kl_alpha(self) -> float:
        """
        KL-racing exponent.
        :return: Float
        """
        return self._kl_alpha

    @property
    def k1(self) -> float:
        """
        KL-racing constant.
        :return: Float
        """
        return self._k1
