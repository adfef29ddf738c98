#!/usr/bin/env python3
"""
    File: NSTandS.py
    Track-and-stop on noisy distances. Each stage is a maximin bandit: the remaining vertices are boxes, the
    current centers their arms, and the box with the largest minimum mean is the next center.
"""
import math
from typing import Callable, Optional
import numpy as np
try:
    from common import __type_error__
    import common
    from Exceptions import OptimizerError, ParameterError, RunFailure
    from OracleSession import OracleSession, OracleModel
    from RunConfig import RunConfig, TrackAndStopConfig
    from RunResult import RunResult
    from MaximinOptimizer import optimal_weights
    from GLR import stop_statistic_z, best_box
    from Solver import KCenterSolver
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__
    import PyKCenter.common as common
    from PyKCenter.Exceptions import OptimizerError, ParameterError, RunFailure
    from PyKCenter.OracleSession import OracleSession, OracleModel
    from PyKCenter.RunConfig import RunConfig, TrackAndStopConfig
    from PyKCenter.RunResult import RunResult
    from PyKCenter.MaximinOptimizer import optimal_weights
    from PyKCenter.GLR import stop_statistic_z, best_box
    from PyKCenter.Solver import KCenterSolver

# Version check:
common.__version_check__()

# Variance proxy for Bernoulli rewards:
BERNOULLI_VARIANCE: float = 0.25


def exploration_rate(t: int, delta_prime: float, beta_form: str = 'log2t') -> float:
    """
    The stopping threshold beta(t, delta'): log(2 t / delta') or log(t / delta').
    :param t: Int: Pulls of the stage's arms.
    :param delta_prime: Float: Error budget.
    :param beta_form: Str: 'log2t' or 'logt'.
    :return: Float
    """
    if beta_form == 'logt':
        return math.log(t / delta_prime)
    return math.log(2.0 * t / delta_prime)


class TrackAndStopStage(object):
    """
    One maximin identification: sample by forced exploration or by tracking the optimal weights of the empirical
    means, stop once the GLR statistic exceeds the exploration rate.
    """
    def __init__(self,
                 counts: np.ndarray,
                 sums: np.ndarray,
                 pull: Callable[[int, int], float],
                 delta_prime: float,
                 sigma2: float,
                 config: TrackAndStopConfig,
                 exploration_offset: float,
                 stage_cap: int = common.STAGE_PULL_CAP,
                 stage: Optional[int] = None,
                 ) -> None:
        """
        Initialize the stage.
        :param counts: np.ndarray: a x b pull counts, updated in place.
        :param sums: np.ndarray: a x b reward sums, updated in place.
        :param pull: Callable[[int, int], float]: Draws one reward of arm (box, arm).
        :param delta_prime: Float: Error budget.
        :param sigma2: Float: Reward variance, floored at common.VARIANCE_FLOOR.
        :param config: TrackAndStopConfig: Knobs.
        :param exploration_offset: Float: Arms with fewer than sqrt(t) - offset pulls are forced.
        :param stage_cap: Int: Pulls allowed before RunFailure.
        :param stage: Optional[int]: Stage number for error context.
        """
        if counts.shape != sums.shape or counts.ndim != 2:
            raise ParameterError("counts and sums must be matching a x b arrays.")
        if not 0 < delta_prime < 1:
            raise ParameterError("delta_prime must be in (0, 1), got %r." % delta_prime)
        self._counts: np.ndarray = counts
        self._sums: np.ndarray = sums
        self._pull: Callable[[int, int], float] = pull
        self._delta_prime: float = delta_prime
        self._sigma2: float = max(sigma2, common.VARIANCE_FLOOR)
        self._config: TrackAndStopConfig = config
        self._offset: float = exploration_offset
        self._stage_cap: int = stage_cap
        self._stage: Optional[int] = stage
        self._weights: Optional[np.ndarray] = None
        self._queries: int = 0
        self._statistic: float = 0.0
        return

    def _sample(self, i: int, j: int) -> None:
        self._queries += 1
        if self._queries > self._stage_cap:
            raise RunFailure("track-and-stop hit the pull cap %i." % self._stage_cap, stage=self._stage,
                             pulls=self._queries)
        self._sums[i, j] += self._pull(i, j)
        self._counts[i, j] += 1
        return

    def _recompute(self, means: np.ndarray) -> None:
        if not bool(np.all(np.isfinite(means))):
            raise OptimizerError("non-finite empirical means", stage=self._stage)
        try:
            budget = self._config.ascent if self._weights is None else self._config.warm_ascent
            weights, _ = optimal_weights(means, budget, self._sigma2, warm_start=self._weights)
        except OptimizerError as e:
            raise OptimizerError(e.error_message, stage=self._stage)
        self._weights = weights.omega
        return

    def run(self) -> tuple[int, int, float]:
        """
        Sample until the stopping rule fires.
        :raises RunFailure: If the pull cap is hit.
        :raises OptimizerError: If the weights cannot be computed.
        :return: Tuple[int, int, float]: (maximin box, queries made, Z - beta at the stop).
        """
        a, b = self._counts.shape
        for i in range(a):
            for j in range(b):
                if self._counts[i, j] == 0:
                    self._sample(i, j)
        since_recompute = self._config.recompute_period
        while True:
            means = self._sums / self._counts
            t = int(self._counts.sum())
            self._statistic = stop_statistic_z(means, self._counts, self._sigma2)
            threshold = exploration_rate(t, self._delta_prime, self._config.beta_form)
            if self._statistic > threshold:
                return best_box(means), self._queries, self._statistic - threshold
            if float(self._counts.min()) < math.sqrt(t) - self._offset:
                i, j = np.unravel_index(int(np.argmin(self._counts)), self._counts.shape)
            else:
                if self._weights is None or since_recompute >= self._config.recompute_period:
                    self._recompute(means)
                    since_recompute = 0
                i, j = np.unravel_index(int(np.argmax(self._weights - self._counts / t)), self._counts.shape)
            self._sample(int(i), int(j))
            since_recompute += 1

    @property
    def queries(self) -> int:
        """Pulls made by run()."""
        return self._queries

    @property
    def statistic(self) -> float:
        """The last GLR statistic Z(t)."""
        return self._statistic

    @property
    def weights(self) -> Optional[np.ndarray]:
        """The cached optimal weights, None before the first recomputation."""
        return self._weights


class NSTandS(KCenterSolver):
    """
    Track-and-stop k-center. Counts and reward sums persist across stages; each stage adds one pull per vertex
    against the newest center before tracking.
    """
    ALGORITHM: str = 'ns-tands'
    MODELS: tuple[OracleModel, ...] = (OracleModel.NS, OracleModel.BERNOULLI)

    def __init__(self, session: OracleSession, config: RunConfig) -> None:
        KCenterSolver.__init__(self, session, config)
        self._counts: np.ndarray = np.zeros((self._n, self._n), dtype=np.int64)
        self._sums: np.ndarray = np.zeros((self._n, self._n), dtype=np.float64)
        if session.model == OracleModel.NS:
            self._sigma2: float = max(session.noise_sigma2, common.VARIANCE_FLOOR)
        else:
            self._sigma2 = BERNOULLI_VARIANCE
        self._delta_prime: float = config.delta_prime(self._n)
        return

    def _remaining(self) -> list[int]:
        taken = set(self._centers)
        return [v for v in range(self._n) if v not in taken]

    def _begin_stage(self, center: int) -> None:
        for v in self._remaining():
            self._sums[v, center] += self._session.reward(v, center)
            self._counts[v, center] += 1
        return

    def _run_stage(self, stage: int) -> tuple[int, int, float]:
        vertices = self._remaining()
        centers = list(self._centers)
        rows, columns = np.ix_(vertices, centers)
        counts = self._counts[rows, columns].astype(np.float64)
        sums = self._sums[rows, columns].copy()
        if self._config.tands.global_exploration:
            offset = self._n * self._config.k / 2.0
        else:
            offset = len(vertices) * len(centers) / 2.0
        tracker = TrackAndStopStage(counts, sums, lambda i, j: self._session.reward(vertices[i], centers[j]),
                                    self._delta_prime, self._sigma2, self._config.tands, offset,
                                    self._config.stage_cap, stage)
        box, queries, margin = tracker.run()
        self._counts[rows, columns] = counts.astype(np.int64)
        self._sums[rows, columns] = sums
        return vertices[box], queries, margin

    @property
    def counts(self) -> np.ndarray:
        """n x n pull counts, [vertex, center]."""
        return self._counts.copy()


def ns_tands(session: OracleSession, config: RunConfig) -> RunResult:
    """
    Run NS-TandS.
    :param session: OracleSession: An NS or Bernoulli session.
    :param config: RunConfig: The run parameters; config.tands holds the tracking knobs.
    :raises OracleError: On a DS session.
    :raises RunFailure: If a stage hits the pull cap.
    :raises OptimizerError: If the weights cannot be computed.
    :return: RunResult
    """
    return NSTandS(session, config).run()


class MaximinBandit(object):
    """
    A standalone maximin bandit over a box x arm matrix of Gaussian arm means.
    """
    def __init__(self,
                 means: np.ndarray,
                 sigma2: float = 1.0,
                 delta: float = 0.05,
                 config: Optional[TrackAndStopConfig] = None,
                 seed: Optional[int] = None,
                 ) -> None:
        """
        Initialize the bandit.
        :param means: np.ndarray: a x b true means, a >= 2.
        :param sigma2: Float: Reward variance.
        :param delta: Float: Error budget in (0, 1).
        :param config: Optional[TrackAndStopConfig]: Tracking knobs.
        :param seed: Optional[int]: Reward stream seed.
        """
        mean = np.asarray(means, dtype=np.float64)
        if mean.ndim != 2 or mean.shape[0] < 2 or mean.shape[1] < 1:
            raise ParameterError("means must be an a x b matrix with a >= 2, got shape %s." % str(mean.shape))
        if not bool(np.all(np.isfinite(mean))):
            raise ParameterError("means must be finite.")
        if not sigma2 > 0:
            raise ParameterError("sigma2 must be > 0, got %r." % sigma2)
        if config is not None and not isinstance(config, TrackAndStopConfig):
            __type_error__("config", "Optional[TrackAndStopConfig]", config)
        self._means: np.ndarray = mean
        self._sigma2: float = float(sigma2)
        self._delta: float = float(delta)
        self._config: TrackAndStopConfig = config if config is not None else TrackAndStopConfig()
        self._rng: np.random.Generator = np.random.default_rng(seed)
        self._counts: np.ndarray = np.zeros(mean.shape, dtype=np.float64)
        return

    def _reward(self, i: int, j: int) -> float:
        return float(self._rng.normal(self._means[i, j], math.sqrt(self._sigma2)))

    def run(self) -> tuple[int, int]:
        """
        Identify the maximin box.
        :return: Tuple[int, int]: (box, pulls).
        """
        a, b = self._means.shape
        self._counts = np.zeros((a, b), dtype=np.float64)
        sums = np.zeros((a, b), dtype=np.float64)
        tracker = TrackAndStopStage(self._counts, sums, self._reward, self._delta, self._sigma2, self._config,
                                    a * b / 2.0)
        box, queries, _ = tracker.run()
        return box, queries

    @property
    def counts(self) -> np.ndarray:
        """Pulls per arm of the last run."""
        return self._counts.copy()

    @property
    def maximin_box(self) -> int:
        """The true maximin box."""
        return best_box(self._means)
