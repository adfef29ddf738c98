#!/usr/bin/env python3
"""
    File: RunConfig.py
"""
from typing import Optional
try:
    from common import __type_error__, is_number
    import common
    from Exceptions import ParameterError
    from Confidence import CIConfig
    from MaximinOptimizer import AscentConfig
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__, is_number
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ParameterError
    from PyKCenter.Confidence import CIConfig
    from PyKCenter.MaximinOptimizer import AscentConfig

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

BETA_FORMS: tuple[str, ...] = ('log2t', 'logt')
TS_POSTERIORS: tuple[str, ...] = ('auto', 'beta', 'gaussian')


class TrackAndStopConfig(object):
    """
    Knobs of the track-and-stop solver.
    """
    def __init__(self,
                 beta_form: str = 'log2t',
                 recompute_period: int = 100,
                 ascent: Optional[AscentConfig] = None,
                 global_exploration: bool = False,
                 recompute_iterations: int = 200,
                 ) -> None:
        """
        Initialize the config.
        :param beta_form: Str: Stopping threshold, 'log2t' for log(2t / delta') or 'logt' for log(t / delta').
        :param recompute_period: Int: Queries between recomputations of the optimal weights.
        :param ascent: Optional[AscentConfig]: Optimizer budget, defaults to 2 * 10^4 iterations.
        :param global_exploration: Bool: Use the n k / 2 forced-exploration offset instead of the stage's arm count.
        :param recompute_iterations: Int: Ascent steps of every warm-started recomputation after a stage's first
            solve, which runs the full ascent budget.
        :raises ParameterError: On an invalid value.
        """
        if not isinstance(beta_form, str):
            __type_error__("beta_form", "str", beta_form)
        elif not isinstance(recompute_period, int):
            __type_error__("recompute_period", "int", recompute_period)
        elif ascent is not None and not isinstance(ascent, AscentConfig):
            __type_error__("ascent", "Optional[AscentConfig]", ascent)
        elif not isinstance(global_exploration, bool):
            __type_error__("global_exploration", "bool", global_exploration)
        elif not isinstance(recompute_iterations, int) or isinstance(recompute_iterations, bool):
            __type_error__("recompute_iterations", "int", recompute_iterations)
        if beta_form not in BETA_FORMS:
            raise ParameterError("beta_form must be one of %s, got '%s'." % (str(BETA_FORMS), beta_form))
        if recompute_period < 1:
            raise ParameterError("recompute_period must be >= 1, got %i." % recompute_period)
        if recompute_iterations < 1:
            raise ParameterError("recompute_iterations must be >= 1, got %i." % recompute_iterations)
        self._beta_form: str = beta_form
        self._recompute_period: int = recompute_period
        self._ascent: AscentConfig = ascent if ascent is not None else AscentConfig(iterations=20000)
        self._global_exploration: bool = global_exploration
        self._recompute_iterations: int = recompute_iterations
        return

    def __to_dict__(self) -> dict:
        return {
            'beta_form': self._beta_form,
            'recompute_period': self._recompute_period,
            'ascent': self._ascent.__to_dict__(),
            'global_exploration': self._global_exploration,
            'recompute_iterations': self._recompute_iterations,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        ascent = None if from_dict.get('ascent') is None else AscentConfig.__from_dict__(from_dict['ascent'])
        return cls(from_dict.get('beta_form', 'log2t'), from_dict.get('recompute_period', 100), ascent,
                   from_dict.get('global_exploration', False), from_dict.get('recompute_iterations', 200))

    @property
    def beta_form(self) -> str:
        """Stopping threshold form."""
        return self._beta_form

    @property
    def recompute_period(self) -> int:
        """Queries between weight recomputations."""
        return self._recompute_period

    @property
    def ascent(self) -> AscentConfig:
        """Optimizer budget."""
        return self._ascent

    @property
    def global_exploration(self) -> bool:
        """Whether forced exploration uses the global n k / 2 offset."""
        return self._global_exploration

    @property
    def recompute_iterations(self) -> int:
        """Ascent steps of a warm-started recomputation."""
        return self._recompute_iterations

    @property
    def warm_ascent(self) -> AscentConfig:
        """
        The optimizer budget for warm-started recomputations: the ascent config with its iteration count
        replaced by recompute_iterations.
        :return: AscentConfig
        """
        return AscentConfig(self._recompute_iterations, self._ascent.lipschitz, self._ascent.averaging)


class RunConfig(object):
    """
    Everything a solver run needs besides the oracle session. delta_prime = delta / n^2 is derived per run, never
    stored.
    """
##########################
# Initialize:
##########################
    def __init__(self,
                 k: int,
                 delta: float = 0.1,
                 first_center: int | str = 0,
                 ci: Optional[CIConfig] = None,
                 z: float = 0.0,
                 max_pulls: Optional[int] = None,
                 ts_posterior: str = 'auto',
                 tands: Optional[TrackAndStopConfig] = None,
                 stage_cap: int = common.STAGE_PULL_CAP,
                 ) -> None:
        """
        Initialize the run config.
        :param k: Int: Number of centers, >= 1.
        :param delta: Float: Error budget in (0, 1).
        :param first_center: Int | str: A point index, or 'random' to draw it from the session.
        :param ci: Optional[CIConfig]: Confidence intervals; None picks the solver's default.
        :param z: Float: Thompson / LCB mixing weight in [0, 1].
        :param max_pulls: Optional[int]: Pulls of a DS arm before the exact fallback; None means m.
        :param ts_posterior: Str: 'auto', 'beta' or 'gaussian'.
        :param tands: Optional[TrackAndStopConfig]: Track-and-stop knobs.
        :param stage_cap: Int: Pulls allowed in one stage before the run fails.
        :raises TypeError: If an invalid type is passed.
        :raises ParameterError: On an invalid value.
        """
        # Type checks:
        if not isinstance(k, int) or isinstance(k, bool):
            __type_error__("k", "int", k)
        elif not is_number(delta):
            __type_error__("delta", "float", delta)
        elif not isinstance(first_center, (int, str)):
            __type_error__("first_center", "int | str", first_center)
        elif ci is not None and not isinstance(ci, CIConfig):
            __type_error__("ci", "Optional[CIConfig]", ci)
        elif not is_number(z):
            __type_error__("z", "float", z)
        elif max_pulls is not None and not isinstance(max_pulls, int):
            __type_error__("max_pulls", "Optional[int]", max_pulls)
        elif not isinstance(ts_posterior, str):
            __type_error__("ts_posterior", "str", ts_posterior)
        elif tands is not None and not isinstance(tands, TrackAndStopConfig):
            __type_error__("tands", "Optional[TrackAndStopConfig]", tands)
        elif not isinstance(stage_cap, int):
            __type_error__("stage_cap", "int", stage_cap)
        # Value checks:
        if k < 1:
            raise ParameterError("k must be >= 1, got %i." % k)
        if not 0 < delta < 1:
            raise ParameterError("delta must be in (0, 1), got %r." % delta)
        if isinstance(first_center, str) and first_center != 'random':
            raise ParameterError("first_center must be an index or 'random', got '%s'." % first_center)
        if isinstance(first_center, int) and first_center < 0:
            raise ParameterError("first_center must be >= 0, got %i." % first_center)
        if not 0 <= z <= 1:
            raise ParameterError("z must be in [0, 1], got %r." % z)
        if max_pulls is not None and max_pulls < 0:
            raise ParameterError("max_pulls must be >= 0, got %i." % max_pulls)
        if ts_posterior not in TS_POSTERIORS:
            raise ParameterError("ts_posterior must be one of %s, got '%s'." % (str(TS_POSTERIORS), ts_posterior))
        if stage_cap < 1:
            raise ParameterError("stage_cap must be >= 1, got %i." % stage_cap)
        # Store the properties:
        self._k: int = k
        self._delta: float = float(delta)
        self._first_center: int | str = first_center
        self._ci: Optional[CIConfig] = ci
        self._z: float = float(z)
        self._max_pulls: Optional[int] = max_pulls
        self._ts_posterior: str = ts_posterior
        self._tands: TrackAndStopConfig = tands if tands is not None else TrackAndStopConfig()
        self._stage_cap: int = stage_cap
        return

##################################
# Load / Save functions:
##################################
    def __to_dict__(self) -> dict:
        """
        Create a JSON / Pickle friendly dict.
        :return: Dict
        """
        return {
            'k': self._k,
            'delta': self._delta,
            'first_center': self._first_center,
            'ci': None if self._ci is None else self._ci.__to_dict__(),
            'z': self._z,
            'max_pulls': self._max_pulls,
            'ts_posterior': self._ts_posterior,
            'tands': self._tands.__to_dict__(),
            'stage_cap': self._stage_cap,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        """
        Load from a dict created by __to_dict__().
        :param from_dict: Dict: The dict to load from.
        :raises ParameterError: If 'k' is missing.
        :return: RunConfig
        """
        try:
            ci = None if from_dict.get('ci') is None else CIConfig.__from_dict__(from_dict['ci'])
            tands = None if from_dict.get('tands') is None else TrackAndStopConfig.__from_dict__(from_dict['tands'])
            return cls(from_dict['k'], from_dict.get('delta', 0.1), from_dict.get('first_center', 0), ci,
                       from_dict.get('z', 0.0), from_dict.get('max_pulls'), from_dict.get('ts_posterior', 'auto'),
                       tands, from_dict.get('stage_cap', common.STAGE_PULL_CAP))
        except KeyError as e:
            error: str = "Invalid dict passed to __from_dict__: missing %s" % str(e)
            raise ParameterError(error, exception=e)

#########################################
# Methods:
#########################################
    def delta_prime(self, n: int) -> float:
        """
        The per-arm error budget delta / n^2.
        :param n: Int: Number of points.
        :return: Float
        """
        return self._delta / float(n * n)

    def replace(self, **changes) -> Self:
        """
        A copy with some fields changed.
        :param changes: Field names and new values.
        :return: RunConfig
        """
        values = {
            'k': self._k, 'delta': self._delta, 'first_center': self._first_center, 'ci': self._ci, 'z': self._z,
            'max_pulls': self._max_pulls, 'ts_posterior': self._ts_posterior, 'tands': self._tands,
            'stage_cap': self._stage_cap,
        }
        unknown = set(changes) - set(values)
        if len(unknown) > 0:
            raise ParameterError("unknown RunConfig field(s): %s" % ", ".join(sorted(unknown)))
        values.update(changes)
        return RunConfig(**values)

#########################################
# Properties:
#########################################
    @property
    def k(self) -> int:
        """Number of centers."""
        return self._k

    @property
    def delta(self) -> float:
        """Error budget."""
        return self._delta

    @property
    def first_center(self) -> int | str:
        """First center index or 'random'."""
        return self._first_center

    @property
    def ci(self) -> Optional[CIConfig]:
        """Confidence interval config, None for the solver default."""
        return self._ci

    @property
    def z(self) -> float:
        """Thompson / LCB mixing weight."""
        return self._z

    @property
    def max_pulls(self) -> Optional[int]:
        """DS pulls before the exact fallback, None for m."""
        return self._max_pulls

    @property
    def ts_posterior(self) -> str:
        """Posterior family for Thompson sampling."""
        return self._ts_posterior

    @property
    def tands(self) -> TrackAndStopConfig:
        """Track-and-stop knobs."""
        return self._tands

    @property
    def stage_cap(self) -> int:
        """Pull cap per stage."""
        return self._stage_cap
