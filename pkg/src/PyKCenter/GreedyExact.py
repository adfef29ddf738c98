#!/usr/bin/env python3
"""
    File: GreedyExact.py
    Farthest-first greedy k-center on exact distances, the baseline every adaptive solver has to reproduce.
"""
from typing import Optional
import numpy as np
try:
    from common import __type_error__
    import common
    from Exceptions import ParameterError
    from PointSet import PointSet
    from DistanceMatrix import DistanceMatrix
    from CenterSet import CenterSet
    from QueryLedger import QueryLedger
    from RunResult import RunResult, StageReport
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ParameterError
    from PyKCenter.PointSet import PointSet
    from PyKCenter.DistanceMatrix import DistanceMatrix
    from PyKCenter.CenterSet import CenterSet
    from PyKCenter.QueryLedger import QueryLedger
    from PyKCenter.RunResult import RunResult, StageReport

# Version check:
common.__version_check__()

ALGORITHM: str = 'greedy'


def farthest_first(distances: np.ndarray, k: int, first_center: int = 0
                   ) -> tuple[list[int], list[float], list[np.ndarray]]:
    """
    Run the greedy on a distance matrix.
    :param distances: np.ndarray: n x n exact distances.
    :param k: Int: Number of centers.
    :param first_center: Int: The first center.
    :return: Tuple[list[int], list[float], list[np.ndarray]]: The centers in order, the bottleneck value of each
        stage 1..k-1, and each stage's nearest-center distance per point (centers hold -inf).
    """
    n = distances.shape[0]
    if not 1 <= k <= n:
        raise ParameterError("k must be in [1, %i], got %i." % (n, k))
    centers = [first_center]
    nearest = distances[:, first_center].copy()
    bottlenecks: list[float] = []
    snapshots: list[np.ndarray] = []
    for _ in range(1, k):
        masked = nearest.copy()
        masked[centers] = -np.inf
        v_star = int(np.argmax(masked))
        snapshots.append(masked)
        bottlenecks.append(float(masked[v_star]))
        centers.append(v_star)
        nearest = np.minimum(nearest, distances[:, v_star])
    return centers, bottlenecks, snapshots


def greedy_gaps(distances: np.ndarray, k: int, first_center: int = 0) -> list[float]:
    """
    The margin at each greedy stage between the farthest point and the runner-up, in nearest-center distance.
    Stages with a single candidate have no margin and are skipped.
    :param distances: np.ndarray: n x n exact distances.
    :param k: Int: Number of centers.
    :param first_center: Int: The first center.
    :return: List[float]
    """
    _, _, snapshots = farthest_first(np.asarray(distances, dtype=np.float64), k, first_center)
    gaps: list[float] = []
    for masked in snapshots:
        candidates = np.sort(masked[np.isfinite(masked)])
        if candidates.size >= 2:
            gaps.append(float(candidates[-1] - candidates[-2]))
    return gaps


def greedy_exact(source: PointSet | DistanceMatrix, k: int, first_center: int = 0) -> RunResult:
    """
    Greedy k-center with every needed distance computed exactly. Stage p charges m queries for each of the n - p
    vertices against the newest center.
    :param source: PointSet | DistanceMatrix: The data.
    :param k: Int: Number of centers, 1 <= k <= n.
    :param first_center: Int: The first center.
    :raises TypeError: If an invalid type is passed.
    :raises ParameterError: If k or first_center are out of range.
    :return: RunResult
    """
    if not isinstance(source, (PointSet, DistanceMatrix)):
        __type_error__("source", "PointSet | DistanceMatrix", source)
    elif not isinstance(k, int) or isinstance(k, bool):
        __type_error__("k", "int", k)
    elif not isinstance(first_center, int) or isinstance(first_center, bool):
        __type_error__("first_center", "int", first_center)
    n, m = source.n, source.m
    if not 1 <= k <= n:
        raise ParameterError("k must be in [1, %i], got %i." % (n, k))
    source.check_index(first_center)
    centers, bottlenecks, snapshots = farthest_first(source.distance_matrix(), k, first_center)
    per_stage: list[int] = []
    per_arm: dict[tuple[int, int], int] = {}
    stages: list[StageReport] = []
    for stage in range(1, k):
        newest = centers[stage - 1]
        for v in range(n):
            if v not in centers[:stage]:
                per_arm[(v, newest)] = m
        per_stage.append(m * (n - stage))
        stages.append(StageReport(stage, centers[stage], 0, per_stage[-1],
                                  _runner_up_gap(snapshots[stage - 1], centers[stage])))
    ledger = QueryLedger(sum(per_stage), per_stage, per_arm)
    return RunResult(ALGORITHM, CenterSet(centers, n=n), ledger, stages)


def _runner_up_gap(masked: np.ndarray, chosen: int) -> float:
    rest = masked.copy()
    rest[chosen] = -np.inf
    runner_up = float(rest.max())
    if runner_up == -np.inf:
        return float(np.inf)
    return float(masked[chosen]) - runner_up


def naive_query_total(n: int, m: int, k: int) -> int:
    """
    The greedy ledger total: m queries for every (non-center point, newest center) pair over stages 1..k-1.
    :param n: Int: Number of points.
    :param m: Int: Dimensions (1 for a distance matrix).
    :param k: Int: Number of centers.
    :return: Int
    """
    return m * sum(n - p for p in range(1, k))


def matches_greedy(source: PointSet | DistanceMatrix, result: RunResult, greedy: Optional[RunResult] = None) -> bool:
    """
    Whether a run returned greedy's centers in greedy's order, starting from the run's first center. Fills
    result.matched_greedy.
    :param source: PointSet | DistanceMatrix: The data the run used.
    :param result: RunResult: The run.
    :param greedy: Optional[RunResult]: A precomputed greedy run from the same first center.
    :return: Bool
    """
    if greedy is None:
        greedy = greedy_exact(source, len(result.centers), result.centers[0])
    result.matched_greedy = list(result.centers) == list(greedy.centers)
    return result.matched_greedy
