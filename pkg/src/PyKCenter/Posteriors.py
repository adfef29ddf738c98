#!/usr/bin/env python3
"""
    File: Posteriors.py
    Conjugate posteriors used by the Thompson sampling solvers.
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
# Define Self:
try:
    from typing import Self
except ImportError:
    try:
        from typing_extensions import Self
    except (ModuleNotFoundError, ImportError):
        try:
            from typing import TypeVar
            Self = TypeVar("Self")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)

GAUSSIAN_PRIOR_MEAN: float = 0.0
GAUSSIAN_PRIOR_VARIANCE: float = 0.5


class BetaPosterior(object):
    """Beta(S, F) posterior of a Bernoulli mean, starting from the uniform prior Beta(1, 1)."""
    def __init__(self, successes: float = 1.0, failures: float = 1.0) -> None:
        """
        Initialize the posterior.
        :param successes: Float: S, >= 1.
        :param failures: Float: F, >= 1.
        """
        if successes < 1 or failures < 1:
            raise ParameterError("Beta parameters must be >= 1, got S=%r, F=%r." % (successes, failures))
        self._successes: float = float(successes)
        self._failures: float = float(failures)
        return

    def update(self, reward: int) -> Self:
        """
        Conjugate update with a binary reward, in place.
        :param reward: Int: 0 or 1.
        :raises ParameterError: If the reward is not binary.
        :return: BetaPosterior: self.
        """
        if reward == 1:
            self._successes += 1.0
        elif reward == 0:
            self._failures += 1.0
        else:
            raise ParameterError("Beta update needs a 0/1 reward, got %r." % reward)
        return self

    def sample(self, rng: np.random.Generator) -> float:
        """
        A Beta(S, F) draw.
        :param rng: np.random.Generator: The random stream.
        :return: Float
        """
        return float(rng.beta(self._successes, self._failures))

    def copy(self) -> Self:
        return BetaPosterior(self._successes, self._failures)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BetaPosterior):
            return NotImplemented
        return self._successes == other._successes and self._failures == other._failures

    def __str__(self) -> str:
        return "Beta(%g, %g)" % (self._successes, self._failures)

    @property
    def successes(self) -> float:
        """S."""
        return self._successes

    @property
    def failures(self) -> float:
        """F."""
        return self._failures

    @property
    def mean(self) -> float:
        """S / (S + F)."""
        return self._successes / (self._successes + self._failures)


class GaussianPosterior(object):
    """Gaussian posterior of a distance, starting from the prior N(0, 0.5)."""
    def __init__(self, mu: float = GAUSSIAN_PRIOR_MEAN, sigma2: float = GAUSSIAN_PRIOR_VARIANCE) -> None:
        """
        Initialize the posterior.
        :param mu: Float: Mean.
        :param sigma2: Float: Variance, > 0.
        """
        if not sigma2 > 0:
            raise ParameterError("posterior variance must be > 0, got %r." % sigma2)
        self._mu: float = float(mu)
        self._sigma2: float = float(sigma2)
        return

    def update(self, d_hat_next: float, t: int, noise_sigma2: float) -> Self:
        """
        Update in place with the running estimate after t + 1 pulls:
        a = 1 / sigma2, b = (t + 1) / noise_sigma2, mu <- (a mu + b d_hat) / (a + b), sigma2 <- 1 / (a + b).
        :param d_hat_next: Float: The estimate including the newest reward.
        :param t: Int: Pulls before the newest reward.
        :param noise_sigma2: Float: Reward noise variance, floored at common.VARIANCE_FLOOR.
        :return: GaussianPosterior: self.
        """
        if t < 0:
            raise ParameterError("t must be >= 0, got %i." % t)
        a = 1.0 / self._sigma2
        b = (t + 1) / max(noise_sigma2, common.VARIANCE_FLOOR)
        self._mu = (a * self._mu + b * d_hat_next) / (a + b)
        self._sigma2 = 1.0 / (a + b)
        return self

    def sample(self, rng: np.random.Generator) -> float:
        """
        A N(mu, sigma2) draw.
        :param rng: np.random.Generator: The random stream.
        :return: Float
        """
        return float(rng.normal(self._mu, math.sqrt(self._sigma2)))

    def copy(self) -> Self:
        return GaussianPosterior(self._mu, self._sigma2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussianPosterior):
            return NotImplemented
        return self._mu == other._mu and self._sigma2 == other._sigma2

    def __str__(self) -> str:
        return "N(%g, %g)" % (self._mu, self._sigma2)

    @property
    def mu(self) -> float:
        """Posterior mean."""
        return self._mu

    @property
    def sigma2(self) -> float:
        """Posterior variance."""
        return self._sigma2


def beta_update(posterior: BetaPosterior, reward: int) -> BetaPosterior:
    """
    Functional form of BetaPosterior.update(), the argument is left unchanged.
    :param posterior: BetaPosterior: The prior.
    :param reward: Int: 0 or 1.
    :return: BetaPosterior
    """
    return posterior.copy().update(reward)


def beta_sample(posterior: BetaPosterior, rng: np.random.Generator) -> float:
    return posterior.sample(rng)


def gaussian_update(posterior: GaussianPosterior, d_hat_next: float, t: int, noise_sigma2: float
                    ) -> GaussianPosterior:
    """
    Functional form of GaussianPosterior.update(), the argument is left unchanged.
    :param posterior: GaussianPosterior: The prior.
    :param d_hat_next: Float: Estimate after t + 1 pulls.
    :param t: Int: Pulls before the newest reward.
    :param noise_sigma2: Float: Reward noise variance.
    :return: GaussianPosterior
    """
    return posterior.copy().update(d_hat_next, t, noise_sigma2)


def gaussian_sample(posterior: GaussianPosterior, rng: np.random.Generator) -> float:
    return posterior.sample(rng)
