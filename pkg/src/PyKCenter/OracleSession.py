#!/usr/bin/env python3
"""
    File: OracleSession.py
"""
from enum import Enum
from typing import Optional
import numpy as np
try:
    from common import __type_error__, is_number
    import common
    from Exceptions import OracleError, ParameterError
    from PointSet import PointSet
    from DistanceMatrix import DistanceMatrix
    from QueryLedger import QueryLedger
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__, is_number
    import PyKCenter.common as common
    from PyKCenter.Exceptions import OracleError, ParameterError
    from PyKCenter.PointSet import PointSet
    from PyKCenter.DistanceMatrix import DistanceMatrix
    from PyKCenter.QueryLedger import QueryLedger

# Version check:
common.__version_check__()


class OracleModel(Enum):
    """The query models a session can answer."""
    DS = 'ds'
    NS = 'ns'
    BERNOULLI = 'bernoulli'


class OracleSession(object):
    """
    Sealed view of a data source answering distance queries and counting every one of them. One session belongs to
    one solver run.
    """
##########################
# Initialize:
##########################
    def __init__(self,
                 source: PointSet | DistanceMatrix,
                 model: OracleModel | str = OracleModel.DS,
                 noise_sigma2: float = 0.0,
                 seed: Optional[int] = None,
                 ) -> None:
        """
        Initialize the session. The seed is split into independent streams for dimension choice, noise, Bernoulli
        draws and the solver's own randomness.
        :param source: PointSet | DistanceMatrix: The data.
        :param model: OracleModel | str: 'ds', 'ns' or 'bernoulli'.
        :param noise_sigma2: Float: Gaussian noise variance for the NS model.
        :param seed: Optional[int]: Session seed.
        :raises TypeError: If an invalid type is passed.
        :raises OracleError: If the DS model is requested on a distance matrix.
        :raises ParameterError: If noise_sigma2 is negative.
        """
        # Type checks:
        if not isinstance(source, (PointSet, DistanceMatrix)):
            __type_error__("source", "PointSet | DistanceMatrix", source)
        elif not isinstance(model, (OracleModel, str)):
            __type_error__("model", "OracleModel | str", model)
        elif not is_number(noise_sigma2):
            __type_error__("noise_sigma2", "float", noise_sigma2)
        elif seed is not None and not isinstance(seed, int):
            __type_error__("seed", "Optional[int]", seed)
        # Value checks:
        if isinstance(model, str):
            try:
                model = OracleModel(model.lower())
            except ValueError:
                raise ParameterError("unknown oracle model '%s'." % model)
        if model == OracleModel.DS and not isinstance(source, PointSet):
            raise OracleError("the DS model needs coordinates, got a distance matrix.")
        if noise_sigma2 < 0:
            raise ParameterError("noise_sigma2 must be >= 0, got %r." % noise_sigma2)
        # Store the properties:
        self._source: PointSet | DistanceMatrix = source
        self._model: OracleModel = model
        self._noise_sigma2: float = float(noise_sigma2)
        self._noise_sd: float = float(np.sqrt(noise_sigma2))
        self._seed: Optional[int] = seed
        dimension_stream, noise_stream, bernoulli_stream, policy_stream = np.random.SeedSequence(seed).spawn(4)
        self._dimension_rng: np.random.Generator = np.random.default_rng(dimension_stream)
        self._noise_rng: np.random.Generator = np.random.default_rng(noise_stream)
        self._bernoulli_rng: np.random.Generator = np.random.default_rng(bernoulli_stream)
        self._policy_rng: np.random.Generator = np.random.default_rng(policy_stream)
        self._points: Optional[np.ndarray] = source.points if isinstance(source, PointSet) else None
        self._distances: Optional[np.ndarray] = None
        self._n: int = source.n
        self._m: int = source.m
        self._query_count: int = 0
        self._per_arm: dict[tuple[int, int], int] = {}
        self._stage_marks: list[int] = []
        return

###############################
# Internal:
###############################
    def _check_pair(self, u: int, v: int) -> None:
        if not (0 <= u < self._n and 0 <= v < self._n):
            raise OracleError("query (%i, %i) out of range [0, %i)." % (u, v, self._n))
        return

    def _charge(self, u: int, v: int, count: int = 1) -> None:
        self._query_count += count
        key = (u, v)
        self._per_arm[key] = self._per_arm.get(key, 0) + count
        return

    def _distance(self, u: int, v: int) -> float:
        if self._distances is None:
            self._distances = self._source.distance_matrix()
        return float(self._distances[u, v])

###############################
# Queries:
###############################
    def query_ds(self, u: int, v: int, j: int) -> float:
        """
        The squared difference of u and v in dimension j.
        :param u: Int: The first point.
        :param v: Int: The second point.
        :param j: Int: The dimension.
        :raises OracleError: If the session is not DS, or an index is out of range.
        :return: Float: A value in [0, 1].
        """
        if self._model != OracleModel.DS:
            raise OracleError("query_ds() on a %s session." % self._model.value)
        self._check_pair(u, v)
        if not 0 <= j < self._m:
            raise OracleError("dimension %i out of range [0, %i)." % (j, self._m))
        self._charge(u, v)
        difference = float(self._points[u, j] - self._points[v, j])
        return difference * difference

    def query_ds_random_dim(self, u: int, v: int) -> float:
        """
        query_ds() on a uniformly random dimension. Unbiased for the normalized squared distance.
        :param u: Int: The first point.
        :param v: Int: The second point.
        :return: Float: A value in [0, 1].
        """
        return self.query_ds(u, v, int(self._dimension_rng.integers(self._m)))

    def query_ns(self, u: int, v: int) -> float:
        """
        The distance plus Gaussian noise of variance noise_sigma2.
        :param u: Int: The first point.
        :param v: Int: The second point.
        :raises OracleError: If the session is not NS, or an index is out of range.
        :return: Float
        """
        if self._model != OracleModel.NS:
            raise OracleError("query_ns() on a %s session." % self._model.value)
        self._check_pair(u, v)
        self._charge(u, v)
        distance = self._distance(u, v)
        if self._noise_sd == 0.0:
            return distance
        return distance + float(self._noise_rng.normal(0.0, self._noise_sd))

    def query_bernoulli(self, u: int, v: int) -> int:
        """
        A Bernoulli reward with success probability equal to the distance. On a DS session the probability is a
        random-dimension value, so the reward mean is still the distance.
        :param u: Int: The first point.
        :param v: Int: The second point.
        :raises OracleError: If the session is NS, or an index is out of range.
        :return: Int: 0 or 1.
        """
        if self._model == OracleModel.DS:
            return self.convert_bernoulli(self.query_ds_random_dim(u, v))
        if self._model != OracleModel.BERNOULLI:
            raise OracleError("query_bernoulli() on a %s session." % self._model.value)
        self._check_pair(u, v)
        self._charge(u, v)
        return self.convert_bernoulli(self._distance(u, v))

    def convert_bernoulli(self, probability: float) -> int:
        """
        Turn a value in [0, 1] into a Bernoulli draw with that mean. Not a query, nothing is charged.
        :param probability: Float: Success probability.
        :return: Int: 0 or 1.
        """
        return 1 if self._bernoulli_rng.random() < probability else 0

    def reward(self, u: int, v: int) -> float:
        """
        One reward under the session's model: a random-dimension value (DS), a noisy distance (NS) or a Bernoulli
        draw (BERNOULLI).
        :param u: Int: The first point.
        :param v: Int: The second point.
        :return: Float
        """
        if self._model == OracleModel.DS:
            return self.query_ds_random_dim(u, v)
        elif self._model == OracleModel.NS:
            return self.query_ns(u, v)
        return float(self.query_bernoulli(u, v))

    def exact_fallback(self, u: int, v: int) -> float:
        """
        Compute a DS distance exactly by querying every dimension. Charges m queries.
        :param u: Int: The first point.
        :param v: Int: The second point.
        :raises OracleError: If the session is not DS.
        :return: Float: The normalized squared distance.
        """
        if self._model != OracleModel.DS:
            raise OracleError("exact_fallback() needs a DS session, got %s." % self._model.value)
        self._check_pair(u, v)
        self._charge(u, v, self._m)
        difference = self._points[u] - self._points[v]
        return float(np.mean(difference * difference))

###############################
# Accounting:
###############################
    def mark_stage(self) -> None:
        """
        Record a stage boundary at the current query count.
        :return: None
        """
        self._stage_marks.append(self._query_count)
        return

    def snapshot_ledger(self) -> QueryLedger:
        """
        The current accounting as a QueryLedger.
        :return: QueryLedger
        """
        return QueryLedger.from_marks(self._query_count, self._stage_marks, self._per_arm)

###############################
# Properties:
###############################
    @property
    def model(self) -> OracleModel:
        """
        The query model.
        :return: OracleModel
        """
        return self._model

    @property
    def noise_sigma2(self) -> float:
        """
        Noise variance of the NS model.
        :return: Float
        """
        return self._noise_sigma2

    @property
    def seed(self) -> Optional[int]:
        """
        The session seed.
        :return: Optional[int]
        """
        return self._seed

    @property
    def n(self) -> int:
        """
        Number of points.
        :return: Int
        """
        return self._n

    @property
    def m(self) -> int:
        """
        Number of dimensions, 1 on a distance matrix.
        :return: Int
        """
        return self._m

    @property
    def query_count(self) -> int:
        """
        Total queries so far.
        :return: Int
        """
        return self._query_count

    @property
    def per_arm_counts(self) -> dict[tuple[int, int], int]:
        """
        Queries per (u, v) pair.
        :return: Dict[tuple[int, int], int]
        """
        return dict(self._per_arm)

    @property
    def policy_rng(self) -> np.random.Generator:
        """
        Random stream reserved for the solver: random first centers, arm choice and posterior samples.
        :return: np.random.Generator
        """
        return self._policy_rng

    @property
    def is_point_source(self) -> bool:
        """
        True when the source has coordinates.
        :return: Bool
        """
        return self._points is not None
