#!/usr/bin/env python3
"""
    File: MaximinOptimizer.py
    Optimal sampling weights of a maximin bandit, by entropic mirror ascent on the restricted simplex.

    A maximin bandit has a boxes of b arms each; the target is the box whose smallest mean is largest. After
    canonical relabeling (best box first, arms ascending within each box) the weights live on the best box's arms
    and on the first arm of every other box.
"""
import math
from typing import Optional
import numpy as np
try:
    from common import __type_error__, is_number
    import common
    from Exceptions import OptimizerError, ParameterError
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__, is_number
    import PyKCenter.common as common
    from PyKCenter.Exceptions import OptimizerError, ParameterError

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

LIPSCHITZ_PAD: float = 1e-6
LIPSCHITZ_FLOOR: float = 1e-6
# Share of the uniform start mixed into a warm start, so no support entry starts at 0:
WARM_START_UNIFORM: float = 0.05


class AscentConfig(object):
    """
    Mirror ascent budget. The learning rate is (1 / L) sqrt(2 log(a + b - 1) / iterations).
    """
    def __init__(self, iterations: int = 100000, lipschitz: Optional[float] = None, averaging: bool = True) -> None:
        """
        Initialize the config.
        :param iterations: Int: Number of ascent steps, >= 1.
        :param lipschitz: Optional[float]: Bound L on the supergradient entries; None derives it from the means.
        :param averaging: Bool: Return the iterate average (True) or the last iterate.
        :raises ParameterError: On an invalid value.
        """
        if not isinstance(iterations, int):
            __type_error__("iterations", "int", iterations)
        elif lipschitz is not None and not is_number(lipschitz):
            __type_error__("lipschitz", "Optional[float]", lipschitz)
        elif not isinstance(averaging, bool):
            __type_error__("averaging", "bool", averaging)
        if iterations < 1:
            raise ParameterError("iterations must be >= 1, got %i." % iterations)
        if lipschitz is not None and lipschitz <= 0:
            raise ParameterError("lipschitz must be > 0, got %r." % lipschitz)
        self._iterations: int = iterations
        self._lipschitz: Optional[float] = None if lipschitz is None else float(lipschitz)
        self._averaging: bool = averaging
        return

    def __to_dict__(self) -> dict:
        return {'iterations': self._iterations, 'lipschitz': self._lipschitz, 'averaging': self._averaging}

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        return cls(from_dict.get('iterations', 100000), from_dict.get('lipschitz'), from_dict.get('averaging', True))

    @property
    def iterations(self) -> int:
        """Number of ascent steps."""
        return self._iterations

    @property
    def lipschitz(self) -> Optional[float]:
        """Fixed supergradient bound, None when derived from the means."""
        return self._lipschitz

    @property
    def averaging(self) -> bool:
        """Whether the iterate average is returned."""
        return self._averaging


class MaximinInstance(object):
    """Means of a maximin bandit: a boxes (rows) by b arms (columns), unit variance."""
    def __init__(self, mu: np.ndarray) -> None:
        """
        Initialize the instance.
        :param mu: np.ndarray: a x b means, a >= 2, b >= 1, finite.
        :raises ParameterError: On a bad shape or a non-finite mean.
        """
        means = np.array(mu, dtype=np.float64)
        if means.ndim != 2 or means.shape[0] < 2 or means.shape[1] < 1:
            raise ParameterError("a maximin instance needs a >= 2 boxes and b >= 1 arms, got shape %s."
                                 % str(means.shape))
        if not bool(np.all(np.isfinite(means))):
            raise OptimizerError("non-finite arm mean in the maximin instance.")
        means.flags.writeable = False
        self._mu: np.ndarray = means
        return

    @classmethod
    def from_means(cls, mu: np.ndarray, sigma2: float = 1.0) -> Self:
        """
        Build a unit-variance instance from means observed with noise variance sigma2, by dividing by sigma.
        :param mu: np.ndarray: a x b means.
        :param sigma2: Float: Noise variance, floored at common.VARIANCE_FLOOR.
        :return: MaximinInstance
        """
        return cls(np.asarray(mu, dtype=np.float64) / math.sqrt(max(sigma2, common.VARIANCE_FLOOR)))

    def maximin_box(self) -> int:
        """
        The box with the largest minimum mean, lowest index on ties.
        :return: Int
        """
        return int(np.argmax(self._mu.min(axis=1)))

    @property
    def mu(self) -> np.ndarray:
        """The means."""
        return self._mu

    @property
    def a(self) -> int:
        """Number of boxes."""
        return int(self._mu.shape[0])

    @property
    def b(self) -> int:
        """Arms per box."""
        return int(self._mu.shape[1])


def support_mask(a: int, b: int) -> np.ndarray:
    """
    The restricted support in canonical labels: the whole first row and the first column.
    :param a: Int: Boxes.
    :param b: Arms per box.
    :return: np.ndarray: Bool a x b mask.
    """
    mask = np.zeros((a, b), dtype=bool)
    mask[0, :] = True
    mask[:, 0] = True
    return mask


class WeightMatrix(object):
    """
    Sampling proportions over (box, arm) pairs, summing to 1.
    """
    def __init__(self, omega: np.ndarray, support: Optional[np.ndarray] = None) -> None:
        """
        Initialize the weights.
        :param omega: np.ndarray: a x b non-negative weights summing to 1.
        :param support: Optional[np.ndarray]: Bool mask of the allowed entries.
        :raises ParameterError: If a weight is negative, the sum is not 1, or mass lies off the support.
        """
        weights = np.array(omega, dtype=np.float64)
        if weights.ndim != 2:
            raise ParameterError("omega must be a matrix, got shape %s." % str(weights.shape))
        if bool(np.any(weights < 0)) or abs(float(weights.sum()) - 1.0) > 1e-9:
            raise ParameterError("omega must be non-negative and sum to 1, sum is %r." % float(weights.sum()))
        if support is not None and bool(np.any(weights[~support] != 0)):
            raise ParameterError("omega has mass outside its support.")
        weights.flags.writeable = False
        self._omega: np.ndarray = weights
        self._support: Optional[np.ndarray] = support
        return

    def __to_dict__(self) -> dict:
        return {
            'omega': self._omega.tolist(),
            'support': None if self._support is None else self._support.tolist(),
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        support = None if from_dict.get('support') is None else np.array(from_dict['support'], dtype=bool)
        return cls(np.array(from_dict['omega']), support)

    def __str__(self) -> str:
        return np.array2string(self._omega, precision=4, suppress_small=True)

    @property
    def omega(self) -> np.ndarray:
        """The weights."""
        return self._omega

    @property
    def support(self) -> Optional[np.ndarray]:
        """Allowed entries, if recorded."""
        return self._support


class Canonicalization(object):
    """
    Relabeling that puts the maximin box first (boxes by decreasing minimum, lowest index first on ties) and sorts
    every box's arms ascending. Canonical entry (i, j) is original entry (rows[i], columns[i, j]).
    """
    def __init__(self, rows: np.ndarray, columns: np.ndarray) -> None:
        self._rows: np.ndarray = rows
        self._columns: np.ndarray = columns
        return

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        """
        Map a matrix in original labels to canonical labels.
        :param matrix: np.ndarray: a x b.
        :return: np.ndarray
        """
        return np.take_along_axis(np.asarray(matrix)[self._rows], self._columns, axis=1)

    def unmap(self, matrix: np.ndarray) -> np.ndarray:
        """
        Map a matrix in canonical labels back to original labels.
        :param matrix: np.ndarray: a x b.
        :return: np.ndarray
        """
        original = np.empty_like(np.asarray(matrix, dtype=np.float64))
        for i, row in enumerate(self._rows):
            original[row, self._columns[i]] = matrix[i]
        return original

    @property
    def rows(self) -> np.ndarray:
        """Original box index of each canonical box."""
        return self._rows

    @property
    def columns(self) -> np.ndarray:
        """Original arm index of each canonical (box, arm)."""
        return self._columns

    @property
    def is_identity(self) -> bool:
        """True when no relabeling was needed."""
        a, b = self._columns.shape
        return bool(np.array_equal(self._rows, np.arange(a))
                    and np.array_equal(self._columns, np.tile(np.arange(b), (a, 1))))


def canonicalize(instance: MaximinInstance) -> tuple[Canonicalization, MaximinInstance]:
    """
    Relabel an instance into canonical form.
    :param instance: MaximinInstance: The instance.
    :return: Tuple[Canonicalization, MaximinInstance]: The permutation and the relabeled instance.
    """
    if not isinstance(instance, MaximinInstance):
        __type_error__("instance", "MaximinInstance", instance)
    mu = instance.mu
    rows = np.lexsort((np.arange(instance.a), -mu.min(axis=1)))
    columns = np.argsort(mu[rows], axis=1, kind='stable')
    permutation = Canonicalization(rows, columns)
    return permutation, MaximinInstance(permutation.apply(mu))


########################################################################################################################
# Objective:
########################################################################################################################
def _pair_terms(mu: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """
    For every rival box i >= 1 and best-box arm j, the weighted cost of merging mu[0, j] and mu[i, 0] at their
    weighted mean: w_0j w_i0 (mu[0, j] - mu[i, 0])^2 / (2 (w_0j + w_i0)), and 0 where both weights are 0.
    """
    best = omega[0, :][None, :]
    rivals = omega[1:, 0][:, None]
    total = best + rivals
    gaps = mu[0, :][None, :] - mu[1:, 0][:, None]
    with np.errstate(divide='ignore', invalid='ignore'):
        terms = best * rivals * gaps * gaps / (2.0 * total)
    return np.where(total > 0, terms, 0.0)


def objective_f(instance: MaximinInstance, omega: np.ndarray) -> tuple[float, tuple[int, int]]:
    """
    f(omega) on a canonical instance: the smallest pair term over rival boxes i and best-box arms j.
    :param instance: MaximinInstance: A canonical instance.
    :param omega: np.ndarray: Weights on the restricted support.
    :return: Tuple[float, tuple[int, int]]: The value and the binding pair (i, j), lowest first on ties.
    """
    terms = _pair_terms(instance.mu, np.asarray(omega, dtype=np.float64))
    flat = int(np.argmin(terms))
    i, j = divmod(flat, instance.b)
    return float(terms.flat[flat]), (i + 1, j)


def _merged_mean(mu: np.ndarray, omega: np.ndarray, i: int, j: int) -> float:
    weight_best, weight_rival = omega[0, j], omega[i, 0]
    total = weight_best + weight_rival
    if total <= 0:
        return (mu[0, j] + mu[i, 0]) / 2.0
    return (mu[0, j] * weight_best + mu[i, 0] * weight_rival) / total


def supergradient(instance: MaximinInstance, omega: np.ndarray) -> np.ndarray:
    """
    A supergradient of f at omega: the KL cost of moving the binding pair to its weighted mean, placed at
    (0, j*) and (i*, 0), zero elsewhere.
    :param instance: MaximinInstance: A canonical instance.
    :param omega: np.ndarray: Weights on the restricted support.
    :return: np.ndarray: a x b matrix.
    """
    mu = instance.mu
    weights = np.asarray(omega, dtype=np.float64)
    _, (i, j) = objective_f(instance, weights)
    merged = _merged_mean(mu, weights, i, j)
    gradient = np.zeros_like(mu)
    gradient[0, j] = (mu[0, j] - merged) ** 2 / 2.0
    gradient[i, 0] = (mu[i, 0] - merged) ** 2 / 2.0
    return gradient


def lipschitz_bound(instance: MaximinInstance) -> float:
    """
    The largest pairwise Gaussian KL between means, padded and floored.
    :param instance: MaximinInstance: The instance.
    :return: Float
    """
    spread = float(instance.mu.max() - instance.mu.min())
    return max(spread * spread / 2.0 + LIPSCHITZ_PAD, LIPSCHITZ_FLOOR)


def ascent_envelope(instance: MaximinInstance, iterations: int, lipschitz: Optional[float] = None) -> float:
    """
    Guaranteed suboptimality of the averaged iterate: L sqrt(2 log(a + b - 1) / iterations).
    :param instance: MaximinInstance: The instance.
    :param iterations: Int: Ascent steps.
    :param lipschitz: Optional[float]: L, derived from the means when None.
    :return: Float
    """
    bound = lipschitz_bound(instance) if lipschitz is None else lipschitz
    return bound * math.sqrt(2.0 * math.log(instance.a + instance.b - 1) / iterations)


def mirror_ascent(instance: MaximinInstance,
                  config: Optional[AscentConfig] = None,
                  warm_start: Optional[np.ndarray] = None,
                  ) -> tuple[WeightMatrix, float]:
    """
    Maximize f over the restricted simplex with multiplicative (negative entropy) updates.
    :param instance: MaximinInstance: A canonical instance.
    :param config: Optional[AscentConfig]: Budget, defaults to AscentConfig().
    :param warm_start: Optional[np.ndarray]: Canonical weights to start from, blended with a WARM_START_UNIFORM
        share of the uniform start.
    :raises OptimizerError: If the objective turns non-finite.
    :return: Tuple[WeightMatrix, float]: The weights and T* = 1 / f (inf when f is 0).
    """
    if config is None:
        config = AscentConfig()
    a, b = instance.a, instance.b
    mu = instance.mu
    mask = support_mask(a, b)
    size = a + b - 1
    omega = mask / float(size)
    if warm_start is not None:
        start = np.where(mask, np.clip(np.asarray(warm_start, dtype=np.float64), 0.0, None), 0.0)
        if float(start.sum()) > 0:
            omega = (1.0 - WARM_START_UNIFORM) * start / float(start.sum()) + WARM_START_UNIFORM * omega
    lipschitz = config.lipschitz if config.lipschitz is not None else lipschitz_bound(instance)
    rate = math.sqrt(2.0 * math.log(size) / config.iterations) / lipschitz
    # The support is the best row plus the rivals' first column, so the loop runs on those two vectors.
    best, rivals = omega[0, :].copy(), omega[1:, 0].copy()
    best_mu, rival_mu = mu[0, :], mu[1:, 0]
    half_square_gaps = (best_mu[None, :] - rival_mu[:, None]) ** 2 / 2.0
    best_running, rival_running = np.zeros_like(best), np.zeros_like(rivals)
    tiny = np.finfo(np.float64).tiny
    for iterate in range(config.iterations):
        best_running += best
        rival_running += rivals
        pair_weight = rivals[:, None] + best[None, :]
        terms = best[None, :] * rivals[:, None] * half_square_gaps / np.maximum(pair_weight, tiny)
        flat = int(np.argmin(terms))
        if not math.isfinite(float(terms.flat[flat])):
            raise OptimizerError("non-finite objective", iterate=iterate)
        i, j = divmod(flat, b)
        weight_best, weight_rival = float(best[j]), float(rivals[i])
        if weight_best + weight_rival > 0:
            merged = (best_mu[j] * weight_best + rival_mu[i] * weight_rival) / (weight_best + weight_rival)
        else:
            merged = (best_mu[j] + rival_mu[i]) / 2.0
        best[j] *= math.exp(rate * (best_mu[j] - merged) ** 2 / 2.0)
        rivals[i] *= math.exp(rate * (rival_mu[i] - merged) ** 2 / 2.0)
        total = float(best.sum() + rivals.sum())
        best /= total
        rivals /= total
    if config.averaging:
        best, rivals = best_running / config.iterations, rival_running / config.iterations
    result = np.zeros_like(omega)
    result[0, :] = best
    result[1:, 0] = rivals
    result /= result.sum()
    value, _ = objective_f(instance, result)
    if not math.isfinite(value):
        raise OptimizerError("non-finite objective", iterate=config.iterations)
    t_value = math.inf if value <= 0 else 1.0 / value
    return WeightMatrix(result, mask), t_value


def optimal_weights(mu: np.ndarray,
                    config: Optional[AscentConfig] = None,
                    sigma2: float = 1.0,
                    warm_start: Optional[np.ndarray] = None,
                    ) -> tuple[WeightMatrix, float]:
    """
    Optimal weights and T* of a means matrix in its original labels.
    :param mu: np.ndarray: a x b means.
    :param config: Optional[AscentConfig]: Budget.
    :param sigma2: Float: Noise variance of the arms.
    :param warm_start: Optional[np.ndarray]: Weights in original labels to start from.
    :return: Tuple[WeightMatrix, float]
    """
    means = np.asarray(mu, dtype=np.float64)
    if means.ndim == 2 and means.shape[0] == 1:
        # A single box has no competitor.
        return WeightMatrix(np.full(means.shape, 1.0 / means.size)), 0.0
    permutation, canonical = canonicalize(MaximinInstance.from_means(means, sigma2))
    start = None if warm_start is None else permutation.apply(warm_start)
    weights, t_value = mirror_ascent(canonical, config, start)
    original = permutation.unmap(weights.omega)
    return WeightMatrix(original, permutation.unmap(weights.support.astype(np.float64)) > 0), t_value


def t_star(mu: np.ndarray, config: Optional[AscentConfig] = None, sigma2: float = 1.0) -> float:
    """
    The characteristic time T*(mu) = 1 / max f.
    :param mu: np.ndarray: a x b means.
    :param config: Optional[AscentConfig]: Budget.
    :param sigma2: Float: Noise variance of the arms.
    :return: Float
    """
    _, t_value = optimal_weights(mu, config, sigma2)
    return t_value
