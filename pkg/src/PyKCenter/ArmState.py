#!/usr/bin/env python3
"""
    File: ArmState.py
"""
import math
from typing import Optional
try:
    import common
    from Exceptions import ArmStateError, ConfidenceError
    from Posteriors import BetaPosterior, GaussianPosterior
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ArmStateError, ConfidenceError
    from PyKCenter.Posteriors import BetaPosterior, GaussianPosterior

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
            Self = TypeVar("Self", bound="ArmState")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)


class ArmState(object):
    """
    Statistics of the arm (v, s): the distance from vertex v to center s.
    """
    __slots__ = ('_v', '_s', '_pulls', '_sum', '_compensation', '_estimate', '_lower', '_upper', '_exact',
                 '_posterior')

    def __init__(self, v: int, s: int, posterior: Optional[BetaPosterior | GaussianPosterior] = None) -> None:
        """
        Initialize an unpulled arm.
        :param v: Int: The vertex.
        :param s: Int: The center.
        :param posterior: Optional[BetaPosterior | GaussianPosterior]: Posterior for Thompson sampling.
        """
        self._v: int = v
        self._s: int = s
        self._pulls: int = 0
        # Neumaier compensated running sum:
        self._sum: float = 0.0
        self._compensation: float = 0.0
        self._estimate: float = 0.0
        self._lower: float = -math.inf
        self._upper: float = math.inf
        self._exact: bool = False
        self._posterior: Optional[BetaPosterior | GaussianPosterior] = posterior
        return

    def add_reward(self, reward: float) -> Self:
        """
        Fold one reward into the running mean.
        :param reward: Float: The reward.
        :raises ArmStateError: If the arm is already exact.
        :return: ArmState: self.
        """
        if self._exact:
            raise ArmStateError("arm (%i, %i) is exact, it takes no more rewards." % (self._v, self._s))
        total = self._sum + reward
        if abs(self._sum) >= abs(reward):
            self._compensation += (self._sum - total) + reward
        else:
            self._compensation += (reward - total) + self._sum
        self._sum = total
        self._pulls += 1
        self._estimate = (self._sum + self._compensation) / self._pulls
        return self

    def set_bounds(self, lower: float, upper: float) -> None:
        """
        Store new confidence bounds, widened if needed so that lower <= estimate <= upper.
        :param lower: Float: Lower bound.
        :param upper: Float: Upper bound.
        :return: None
        """
        self._lower = min(lower, self._estimate)
        self._upper = max(upper, self._estimate)
        return

    def make_exact(self, value: float) -> None:
        """
        Pin the arm to its exact distance: estimate, lower and upper all equal value.
        :param value: Float: The exact distance.
        :return: None
        """
        self._estimate = self._lower = self._upper = float(value)
        self._exact = True
        return

    def row(self) -> list:
        """
        The arm as a (v, s, t, d_hat, L, U) row.
        :return: List
        """
        return [self._v, self._s, self._pulls, self._estimate, self._lower, self._upper]

    def __str__(self) -> str:
        return "ArmState(v=%i, s=%i, t=%i, d_hat=%g, L=%g, U=%g%s)" % (
            self._v, self._s, self._pulls, self._estimate, self._lower, self._upper, ", exact" if self._exact else "")

    @property
    def v(self) -> int:
        """The vertex."""
        return self._v

    @property
    def s(self) -> int:
        """The center."""
        return self._s

    @property
    def pulls(self) -> int:
        """Rewards folded in so far."""
        return self._pulls

    @property
    def estimate(self) -> float:
        """Running mean of the rewards."""
        return self._estimate

    @property
    def exact(self) -> bool:
        """True once the exact fallback ran."""
        return self._exact

    @property
    def is_bounded(self) -> bool:
        """True when the bounds may be read."""
        return self._exact or self._pulls > 0

    @property
    def lcb(self) -> float:
        """
        Lower confidence bound.
        :raises ConfidenceError: If the arm was never pulled.
        :return: Float
        """
        if not self.is_bounded:
            raise ConfidenceError("arm (%i, %i) read before its first pull." % (self._v, self._s))
        return self._lower

    @property
    def ucb(self) -> float:
        """
        Upper confidence bound.
        :raises ConfidenceError: If the arm was never pulled.
        :return: Float
        """
        if not self.is_bounded:
            raise ConfidenceError("arm (%i, %i) read before its first pull." % (self._v, self._s))
        return self._upper

    @property
    def posterior(self) -> Optional[BetaPosterior | GaussianPosterior]:
        """The Thompson sampling posterior, if any."""
        return self._posterior


def update_estimate_ds(arm: ArmState, reward: float) -> ArmState:
    """
    Fold a per-dimension squared distance into the arm's mean.
    :param arm: ArmState: The arm.
    :param reward: Float: The reward, in [0, 1].
    :raises ArmStateError: If the arm is exact.
    :return: ArmState
    """
    return arm.add_reward(reward)


def update_estimate_ns(arm: ArmState, reward: float) -> ArmState:
    """
    Fold a noisy distance into the arm's mean: d_hat(t + 1) = t / (t + 1) d_hat(t) + r / (t + 1).
    :param arm: ArmState: The arm.
    :param reward: Float: The reward.
    :raises ArmStateError: If the arm is exact.
    :return: ArmState
    """
    return arm.add_reward(reward)
