#!/usr/bin/env python3
"""
    File: Diagnostics.py
    Instance hardness: gap terms of a greedy trajectory, the DS-UCB upper bound, the lower bound for +/-1/2 data,
    the any-time width fact and its constant, and the track-and-stop sum of characteristic times.
"""
import csv
import math
from typing import Optional
from warnings import warn
import numpy as np
try:
    from common import __type_error__
    import common
    from Exceptions import ParameterError, KCenterWarning
    from PointSet import PointSet
    from DistanceMatrix import DistanceMatrix
    from Confidence import ci_iterated_log, kl_bernoulli
    from MaximinOptimizer import AscentConfig, t_star
    from GreedyExact import farthest_first
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ParameterError, KCenterWarning
    from PyKCenter.PointSet import PointSet
    from PyKCenter.DistanceMatrix import DistanceMatrix
    from PyKCenter.Confidence import ci_iterated_log, kl_bernoulli
    from PyKCenter.MaximinOptimizer import AscentConfig, t_star
    from PyKCenter.GreedyExact import farthest_first

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

Term = tuple[int, int, int]
DEFAULT_GAPS: np.ndarray = np.geomspace(0.01, 1.0, 25)


class GreedyTrajectory(object):
    """
    The exact greedy run on a dataset: its centers in pick order, the bottleneck value (largest distance to the
    nearest center) after each stage p = 1..k-1, and each point's distance to its nearest center after stage p.
    """
    def __init__(self, distances: np.ndarray, centers: list[int], bottlenecks: list[float],
                 nearest: list[np.ndarray]) -> None:
        self._distances: np.ndarray = distances
        self._centers: list[int] = list(centers)
        self._bottlenecks: list[float] = list(bottlenecks)
        self._nearest: list[np.ndarray] = list(nearest)
        return

    @classmethod
    def from_source(cls, source: PointSet | DistanceMatrix, k: int, first_center: int = 0) -> Self:
        """
        Run the greedy on a dataset.
        :param source: PointSet | DistanceMatrix: The data.
        :param k: Int: Number of centers, 1 <= k <= n.
        :param first_center: Int: The first center.
        :return: GreedyTrajectory
        """
        if not isinstance(source, (PointSet, DistanceMatrix)):
            __type_error__("source", "PointSet | DistanceMatrix", source)
        source.check_index(first_center)
        distances = source.distance_matrix()
        centers, bottlenecks, nearest = farthest_first(distances, k, first_center)
        return cls(distances, centers, bottlenecks, nearest)

    def stage_centers(self, p: int) -> list[int]:
        """The first p centers."""
        return self._centers[:p]

    def nearest_distance(self, v: int, p: int) -> float:
        """
        Distance from v to its nearest center among the first p.
        :param v: Int: A point that is not one of the first p centers.
        :param p: Int: Stage, 1 <= p <= k - 1.
        :return: Float
        """
        return float(self._nearest[p - 1][v])

    def nearest_center(self, v: int, p: int) -> int:
        """The center among the first p nearest to v, lowest stage order on ties."""
        row = self._distances[v, self._centers[:p]]
        return self._centers[int(np.argmin(row))]

    def is_unique(self) -> bool:
        """
        Whether every stage's bottleneck point is strictly farther than the runner-up.
        :return: Bool
        """
        for p, masked in enumerate(self._nearest, start=1):
            rest = masked.copy()
            rest[self._centers[p]] = -np.inf
            if rest.max() >= masked[self._centers[p]]:
                return False
        return True

    @property
    def distances(self) -> np.ndarray:
        """The exact distance matrix."""
        return self._distances

    @property
    def centers(self) -> list[int]:
        """Centers in pick order."""
        return list(self._centers)

    @property
    def bottlenecks(self) -> list[float]:
        """The bottleneck value after each stage p = 1..k-1."""
        return list(self._bottlenecks)

    @property
    def n(self) -> int:
        return int(self._distances.shape[0])

    @property
    def k(self) -> int:
        return len(self._centers)


class HardnessReport(object):
    """
    Hardness terms and bounds of one instance.
    """
    def __init__(self,
                 m_terms: dict[Term, float],
                 ub_value: float,
                 lb_value: float,
                 tstar_sum: Optional[float] = None,
                 constant: Optional[float] = None,
                 in_model: bool = True,
                 ) -> None:
        self._m_terms: dict[Term, float] = dict(m_terms)
        self._ub_value: float = ub_value
        self._lb_value: float = lb_value
        self._tstar_sum: Optional[float] = tstar_sum
        self._constant: Optional[float] = constant
        self._in_model: bool = in_model
        return

    def __to_dict__(self) -> dict:
        return {
            'm_terms': [[v, s, p, value] for (v, s, p), value in sorted(self._m_terms.items())],
            'ub_value': self._ub_value,
            'lb_value': self._lb_value,
            'tstar_sum': self._tstar_sum,
            'constant': self._constant,
            'in_model': self._in_model,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        terms = {(int(v), int(s), int(p)): float(value) for v, s, p, value in from_dict['m_terms']}
        return cls(terms, from_dict['ub_value'], from_dict['lb_value'], from_dict.get('tstar_sum'),
                   from_dict.get('constant'), from_dict.get('in_model', True))

    def csv_rows(self) -> list[list]:
        """
        The report as (term, v, s, p, value) rows, header first: the summary values, then every m term.
        :return: List[list]
        """
        rows: list[list] = [['term', 'v', 's', 'p', 'value'],
                            ['ub', '', '', '', repr(self._ub_value)],
                            ['lb', '', '', '', repr(self._lb_value)]]
        if self._tstar_sum is not None:
            rows.append(['tstar_sum', '', '', '', repr(self._tstar_sum)])
        if self._constant is not None:
            rows.append(['c', '', '', '', repr(self._constant)])
        rows.append(['in_model', '', '', '', int(self._in_model)])
        for (v, s, p), value in sorted(self._m_terms.items()):
            rows.append(['m', v, s, p, repr(value)])
        return rows

    def to_csv(self, path: str) -> None:
        """
        Write csv_rows() to a file.
        :param path: Str: Output path.
        :return: None
        """
        with open(path, 'w', newline='') as file_handle:
            csv.writer(file_handle, lineterminator='\n').writerows(self.csv_rows())
        return

    @property
    def m_terms(self) -> dict[Term, float]:
        """(v, center, stage) -> gap term."""
        return dict(self._m_terms)

    @property
    def ub_value(self) -> float:
        """DS-UCB upper bound."""
        return self._ub_value

    @property
    def lb_value(self) -> float:
        """Lower bound."""
        return self._lb_value

    @property
    def tstar_sum(self) -> Optional[float]:
        """gamma times the summed per-stage characteristic times, when computed."""
        return self._tstar_sum

    @property
    def constant(self) -> Optional[float]:
        """The constant c used by the upper bound."""
        return self._constant

    @property
    def in_model(self) -> bool:
        """Whether the lower bound's +/-1/2 coordinate assumption holds."""
        return self._in_model


########################################################################################################################
# Gap terms:
########################################################################################################################
def hardness_term(trajectory: GreedyTrajectory, v: int, s: int, p: int) -> float:
    """
    The gap term of point v against center s at stage p: the larger of d(v, s) minus v's nearest-center
    distance, and the stage bottleneck minus d(v, s).
    :param trajectory: GreedyTrajectory: The greedy run.
    :param v: Int: A point that is not one of the first p centers.
    :param s: Int: One of the first p centers.
    :param p: Int: Stage, 1 <= p <= k - 1.
    :return: Float
    """
    d_vs = float(trajectory.distances[v, s])
    return max(d_vs - trajectory.nearest_distance(v, p), trajectory.bottlenecks[p - 1] - d_vs)


def hardness_terms(trajectory: GreedyTrajectory) -> dict[Term, float]:
    """
    Every gap term (v, s, p) with s among the first p centers and v outside them, for p = 1..k-1.
    :param trajectory: GreedyTrajectory: The greedy run.
    :return: Dict[tuple[int, int, int], float]: (v, s_i, p) -> value.
    """
    if not isinstance(trajectory, GreedyTrajectory):
        __type_error__("trajectory", "GreedyTrajectory", trajectory)
    terms: dict[Term, float] = {}
    centers = trajectory.centers
    for p in range(1, trajectory.k):
        taken = set(centers[:p])
        for v in range(trajectory.n):
            if v in taken:
                continue
            for s in centers[:p]:
                terms[(v, s, p)] = hardness_term(trajectory, v, s, p)
    return terms


def log_log_factor(gap: float) -> float:
    """log(2 log(2 / gap)) when 2 log(2 / gap) > e, else 1."""
    inner = 2.0 * math.log(2.0 / gap)
    if inner > math.e:
        return math.log(inner)
    return 1.0


def _pull_bound(gap: float, c: float, log_term: float, m: int) -> float:
    if gap <= 0:
        return 2.0 * m
    return min(c * log_term * log_log_factor(gap) / (gap * gap), 2.0 * m)


########################################################################################################################
# Bounds:
########################################################################################################################
def fact_bound(gap: float, delta_prime: float, c: float = 1.0) -> float:
    """
    The closed form c log(1 / delta') log(2 log(2 / gap)) / gap^2.
    :param gap: Float: The gap, > 0.
    :param delta_prime: Float: Error budget in (0, 1).
    :param c: Float: The constant.
    :return: Float
    """
    if not gap > 0:
        raise ParameterError("gap must be > 0, got %r." % gap)
    if not 0 < delta_prime < 1:
        raise ParameterError("delta_prime must be in (0, 1), got %r." % delta_prime)
    return c * math.log(1.0 / delta_prime) * log_log_factor(gap) / (gap * gap)


def fact_search(gap: float, delta_prime: float) -> int:
    """
    The smallest u with ci_iterated_log(u, delta') <= gap / 8, by doubling then bisection.
    :param gap: Float: The gap, > 0.
    :param delta_prime: Float: Error budget in (0, 1).
    :return: Int
    """
    if not gap > 0:
        raise ParameterError("gap must be > 0, got %r." % gap)
    target = gap / 8.0
    if ci_iterated_log(1, delta_prime) <= target:
        return 1
    low, high = 1, 2
    while ci_iterated_log(high, delta_prime) > target:
        low, high = high, high * 2
    while high - low > 1:
        middle = (low + high) // 2
        if ci_iterated_log(middle, delta_prime) <= target:
            high = middle
        else:
            low = middle
    return high


def calibrate_constant(delta_prime: float, gaps: Optional[np.ndarray] = None) -> float:
    """
    The smallest c for which fact_bound() dominates fact_search() on every gap of a grid.
    :param delta_prime: Float: Error budget in (0, 1).
    :param gaps: Optional[np.ndarray]: Gap grid, defaults to 25 log-spaced gaps in [0.01, 1].
    :return: Float
    """
    grid = DEFAULT_GAPS if gaps is None else np.asarray(gaps, dtype=np.float64)
    return max(fact_search(float(gap), delta_prime) / fact_bound(float(gap), delta_prime) for gap in grid)


def dsucb_upper_bound(trajectory: GreedyTrajectory, m: int, delta: float, c: Optional[float] = None) -> float:
    """
    The DS-UCB query bound. For each non-center point and each center, the largest per-stage pull bound
    c log(n^2 / delta) loglog(gap) / gap^2 over the stages where that center is present, capped at 2m; plus the
    same for each pair of centers over the stages before the later one was picked.
    :param trajectory: GreedyTrajectory: The greedy run.
    :param m: Int: Dimensions.
    :param delta: Float: Error budget in (0, 1).
    :param c: Optional[float]: The constant, calibrate_constant(delta / n^2) when None.
    :return: Float
    """
    if not 0 < delta < 1:
        raise ParameterError("delta must be in (0, 1), got %r." % delta)
    n, k = trajectory.n, trajectory.k
    if c is None:
        c = calibrate_constant(delta / float(n * n))
    log_term = math.log(n * n / delta)
    centers = trajectory.centers
    taken = set(centers)
    total = 0.0
    for v in range(n):
        if v in taken:
            continue
        for i in range(1, k):
            total += max(_pull_bound(hardness_term(trajectory, v, centers[i - 1], p), c, log_term, m)
                         for p in range(i, k))
    for i in range(2, k + 1):
        for j in range(1, i):
            total += max(_pull_bound(hardness_term(trajectory, centers[i - 1], centers[j - 1], p), c, log_term, m)
                         for p in range(j, i))
    return total


def _clamped_kl(x: float, y: float) -> float:
    low, high = common.BOUNDARY_CLAMP, 1.0 - common.BOUNDARY_CLAMP
    return kl_bernoulli(min(max(x, low), high), min(max(y, low), high))


def _information_ratio(numerator: float, divergence: float) -> float:
    # No alternative separates the pair: the term carries no constraint.
    if divergence <= 0 or math.isinf(divergence):
        return 0.0
    return numerator / divergence


def lower_bound(trajectory: GreedyTrajectory, m: int, delta: float) -> float:
    """
    The expected-query lower bound for algorithms reproducing the greedy from random-coordinate queries:
    half the sum over non-center points of the largest per-stage ratio log(1 / 2.4 delta) / kl, with kl the
    largest divergence between v's and the next center's distances to a current center, plus half the sum over
    stages of the largest mirrored ratio over the remaining points. Each ratio is capped at m, the price of
    reading one distance exactly, so the bound never exceeds the capped upper bound.
    :param trajectory: GreedyTrajectory: The greedy run.
    :param m: Int: Dimension count.
    :param delta: Float: Error budget in (0, 1).
    :return: Float: In [0, m (n - 1) / 2]; 0 when delta >= 1 / 2.4.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ParameterError("m must be a positive int, got %r." % (m,))
    if not 0 < delta < 1:
        raise ParameterError("delta must be in (0, 1), got %r." % delta)
    numerator = max(math.log(1.0 / (2.4 * delta)), 0.0)
    cap = float(m)
    n, k = trajectory.n, trajectory.k
    distances = trajectory.distances
    centers = trajectory.centers
    taken = set(centers)
    first = 0.0
    for v in range(n):
        if v in taken:
            continue
        ratios = []
        for p in range(1, k):
            chosen = centers[p]
            divergence = max(_clamped_kl(distances[v, s], distances[chosen, s]) for s in centers[:p])
            ratios.append(_information_ratio(numerator, divergence))
        first += min(max(ratios, default=0.0), cap)
    second = 0.0
    for p in range(1, k):
        chosen = centers[p]
        later = set(centers[:p + 1])
        ratios = []
        for v in range(n):
            if v in later:
                continue
            divergence = max(_clamped_kl(distances[chosen, s], distances[v, s]) for s in centers[:p])
            ratios.append(_information_ratio(numerator, divergence))
        second += min(max(ratios, default=0.0), cap)
    return 0.5 * first + 0.5 * second


def stage_means(trajectory: GreedyTrajectory, p: int) -> np.ndarray:
    """
    Stage p's means matrix: distances from the points outside the first p centers (index order) to those
    centers (pick order).
    :param trajectory: GreedyTrajectory: The greedy run.
    :param p: Int: Stage, 1 <= p <= k - 1.
    :return: np.ndarray: (n - p) x p.
    """
    centers = trajectory.stage_centers(p)
    taken = set(centers)
    rows = [v for v in range(trajectory.n) if v not in taken]
    return trajectory.distances[np.ix_(rows, centers)]


def tands_bound(trajectory: GreedyTrajectory, sigma2: float = 1.0, gamma: float = 1.0,
                config: Optional[AscentConfig] = None) -> float:
    """
    gamma times the sum over stages of the characteristic time of each stage's means matrix, the asymptotic
    track-and-stop rate.
    :param trajectory: GreedyTrajectory: The greedy run.
    :param sigma2: Float: Noise variance.
    :param gamma: Float: In [1, e / 2].
    :param config: Optional[AscentConfig]: Optimizer budget.
    :raises ParameterError: If gamma is out of range.
    :return: Float
    """
    if not 1.0 <= gamma <= math.e / 2.0:
        raise ParameterError("gamma must be in [1, e/2], got %r." % gamma)
    total = 0.0
    for p in range(1, trajectory.k):
        means = stage_means(trajectory, p)
        if means.shape[0] >= 2:
            total += t_star(means, config, sigma2)
    return gamma * total


def is_rademacher(source: PointSet | DistanceMatrix) -> bool:
    """Whether every coordinate is -1/2 or +1/2."""
    if not isinstance(source, PointSet):
        return False
    return bool(np.all(np.abs(np.abs(source.points) - 0.5) <= common.BOUNDARY_CLAMP))


def hardness_report(source: PointSet | DistanceMatrix,
                    k: int,
                    delta: float = 0.1,
                    first_center: int = 0,
                    c: Optional[float] = None,
                    sigma2: Optional[float] = None,
                    gamma: float = 1.0,
                    config: Optional[AscentConfig] = None,
                    ) -> HardnessReport:
    """
    Every calculator on one dataset.
    :param source: PointSet | DistanceMatrix: The data.
    :param k: Int: Number of centers.
    :param delta: Float: Error budget.
    :param first_center: Int: The first center.
    :param c: Optional[float]: Upper-bound constant, calibrated when None.
    :param sigma2: Optional[float]: Noise variance; the T* sum is skipped when None.
    :param gamma: Float: Track-and-stop factor.
    :param config: Optional[AscentConfig]: Optimizer budget.
    :return: HardnessReport
    """
    trajectory = GreedyTrajectory.from_source(source, k, first_center)
    if c is None:
        c = calibrate_constant(delta / float(source.n * source.n))
    in_model = is_rademacher(source)
    if not in_model and common.USE_WARNINGS:
        warn("lower bound evaluated out of model: coordinates are not all +/-1/2.", KCenterWarning)
    tstar_sum = None if sigma2 is None else tands_bound(trajectory, sigma2, gamma, config)
    return HardnessReport(hardness_terms(trajectory), dsucb_upper_bound(trajectory, source.m, delta, c),
                          lower_bound(trajectory, source.m, delta), tstar_sum, c, in_model)
