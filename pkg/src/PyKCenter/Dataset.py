#!/usr/bin/env python3
"""
    File: Dataset.py
    Exact-distance utilities, synthetic generators and point / matrix file IO.
"""
import csv
import math
import struct
from itertools import combinations
from typing import Optional, Sequence
from warnings import warn
import numpy as np
from scipy.special import expit
try:
    from common import __type_error__, is_number, parse_key_value_text
    import common
    from Exceptions import DataValidationError, ParameterError, BruteForceRefused, KCenterWarning
    from PointSet import PointSet, normalize
    from DistanceMatrix import DistanceMatrix
    from CenterSet import CenterSet
    from GreedyExact import greedy_gaps
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__, is_number, parse_key_value_text
    import PyKCenter.common as common
    from PyKCenter.Exceptions import DataValidationError, ParameterError, BruteForceRefused, KCenterWarning
    from PyKCenter.PointSet import PointSet, normalize
    from PyKCenter.DistanceMatrix import DistanceMatrix
    from PyKCenter.CenterSet import CenterSet
    from PyKCenter.GreedyExact import greedy_gaps

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
            Self = TypeVar("Self", bound="SyntheticSpec")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)

BINARY_MAGIC: bytes = b"KCPT"
_BINARY_HEADER = struct.Struct("<4sII")

Source = PointSet | DistanceMatrix


########################################################################################################################
# Exact utilities:
########################################################################################################################
def exact_distance(source: Source, u: int, v: int) -> float:
    """
    The normalized squared distance between two points (a lookup for a matrix source).
    :param source: PointSet | DistanceMatrix: The data.
    :param u: Int: The first index.
    :param v: Int: The second index.
    :return: Float: A value in [0, 1].
    """
    if not isinstance(source, (PointSet, DistanceMatrix)):
        __type_error__("source", "PointSet | DistanceMatrix", source)
    return source.exact_distance(u, v)


def bottleneck(source: Source, centers: CenterSet | Sequence[int]) -> tuple[int, float]:
    """
    The point farthest from its nearest center, and that distance. Ties go to the lowest index.
    :param source: PointSet | DistanceMatrix: The data.
    :param centers: CenterSet | Sequence[int]: At least one and fewer than n centers.
    :raises ParameterError: If centers is empty or contains every point.
    :return: Tuple[int, float]: (v_star, value).
    """
    center_list = list(centers)
    distances = source.distance_matrix()
    n = distances.shape[0]
    if len(center_list) == 0:
        raise ParameterError("bottleneck() needs at least one center.")
    if len(set(center_list)) >= n:
        raise ParameterError("bottleneck() has no remaining vertex: every point is a center.")
    nearest = distances[:, center_list].min(axis=1)
    nearest[center_list] = -np.inf
    v_star = int(np.argmax(nearest))
    return v_star, float(nearest[v_star])


def optimal_kcenter_bruteforce(source: Source, k: int) -> tuple[CenterSet, float]:
    """
    The exact k-center optimum by enumerating every k-subset. For test oracles on small instances.
    :param source: PointSet | DistanceMatrix: The data.
    :param k: Int: Number of centers, 1 <= k <= n.
    :raises BruteForceRefused: If C(n, k) exceeds common.BRUTE_FORCE_LIMIT.
    :return: Tuple[CenterSet, float]: The first optimal subset in lexicographic order and its bottleneck value.
    """
    if not isinstance(k, int):
        __type_error__("k", "int", k)
    distances = source.distance_matrix()
    n = distances.shape[0]
    if not 1 <= k <= n:
        raise ParameterError("k must be in [1, %i], got %i." % (n, k))
    subsets = math.comb(n, k)
    if subsets > common.BRUTE_FORCE_LIMIT:
        raise BruteForceRefused(n, k, subsets, common.BRUTE_FORCE_LIMIT)
    if k == n:
        return CenterSet(list(range(n)), n=n), 0.0
    best_subset: Optional[tuple[int, ...]] = None
    best_value = math.inf
    for subset in combinations(range(n), k):
        # A center's own row has a zero in its column, so it never raises the max.
        value = float(distances[:, subset].min(axis=1).max())
        if value < best_value:
            best_value = value
            best_subset = subset
    return CenterSet(list(best_subset), n=n), best_value


########################################################################################################################
# Synthetic data:
########################################################################################################################
class SyntheticSpec(object):
    """
    Cluster layout for generate_synthetic(). Clusters live in a low dimensional latent space and are projected into
    m dimensions, so distances do not concentrate as m grows.
    """
    def __init__(self,
                 clusters: int,
                 per_cluster: int,
                 m: int,
                 spread: float = 0.01,
                 seed: Optional[int] = None,
                 latent: int = 2,
                 noise: float = 0.0,
                 min_separation: float = 0.3,
                 centers: Optional[Sequence[Sequence[float]]] = None,
                 convention: str = 'centered',
                 ) -> None:
        """
        Initialize the spec.
        :param clusters: Int: Number of clusters.
        :param per_cluster: Int: Points per cluster.
        :param m: Int: Output dimension.
        :param spread: Float: Standard deviation of points around their cluster center, in latent units.
        :param seed: Optional[int]: Default seed.
        :param latent: Int: Latent dimension.
        :param noise: Float: Standard deviation of isotropic noise added after projection.
        :param min_separation: Float: Target minimum distance between random latent centers.
        :param centers: Optional[Sequence[Sequence[float]]]: Explicit latent centers, clusters x latent.
        :param convention: Str: Normalization convention of the output.
        :raises ParameterError: On invalid values.
        """
        # Type checks:
        if not isinstance(clusters, int):
            __type_error__("clusters", "int", clusters)
        elif not isinstance(per_cluster, int):
            __type_error__("per_cluster", "int", per_cluster)
        elif not isinstance(m, int):
            __type_error__("m", "int", m)
        elif not is_number(spread):
            __type_error__("spread", "float", spread)
        elif seed is not None and not isinstance(seed, int):
            __type_error__("seed", "Optional[int]", seed)
        elif not isinstance(latent, int):
            __type_error__("latent", "int", latent)
        elif not is_number(noise):
            __type_error__("noise", "float", noise)
        elif not is_number(min_separation):
            __type_error__("min_separation", "float", min_separation)
        # Value checks:
        if clusters < 1 or per_cluster < 1 or clusters * per_cluster < 2:
            raise ParameterError("need at least 2 points, got clusters=%i, per_cluster=%i." % (clusters, per_cluster))
        if m < 1 or latent < 1:
            raise ParameterError("m and latent must be >= 1.")
        if spread < 0 or noise < 0 or min_separation < 0:
            raise ParameterError("spread, noise and min_separation must be >= 0.")
        center_array: Optional[np.ndarray] = None
        if centers is not None:
            center_array = np.array(centers, dtype=np.float64)
            if center_array.shape != (clusters, latent):
                raise ParameterError("centers must be %i x %i, got %s." % (clusters, latent, str(center_array.shape)))
        self._clusters: int = clusters
        self._per_cluster: int = per_cluster
        self._m: int = m
        self._spread: float = float(spread)
        self._seed: Optional[int] = seed
        self._latent: int = latent
        self._noise: float = float(noise)
        self._min_separation: float = float(min_separation)
        self._centers: Optional[np.ndarray] = center_array
        self._convention: str = convention
        return

    def __to_dict__(self) -> dict:
        """
        Create a JSON / Pickle friendly dict.
        :return: Dict
        """
        return {
            'clusters': self._clusters,
            'per_cluster': self._per_cluster,
            'm': self._m,
            'spread': self._spread,
            'seed': self._seed,
            'latent': self._latent,
            'noise': self._noise,
            'min_separation': self._min_separation,
            'centers': None if self._centers is None else self._centers.tolist(),
            'convention': self._convention,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        """
        Load from a dict created by __to_dict__(), missing optional keys take their defaults.
        :param from_dict: Dict: The dict to load from.
        :raises ParameterError: If a required key is missing.
        :return: SyntheticSpec
        """
        try:
            return cls(clusters=from_dict['clusters'], per_cluster=from_dict['per_cluster'], m=from_dict['m'],
                       spread=from_dict.get('spread', 0.01), seed=from_dict.get('seed'),
                       latent=from_dict.get('latent', 2), noise=from_dict.get('noise', 0.0),
                       min_separation=from_dict.get('min_separation', 0.3), centers=from_dict.get('centers'),
                       convention=from_dict.get('convention', 'centered'))
        except KeyError as e:
            error: str = "Invalid dict passed to __from_dict__: missing %s" % str(e)
            raise ParameterError(error, exception=e)

    @classmethod
    def from_text(cls, text: str) -> Self:
        """
        Parse a key=value spec. Keys: clusters, per_cluster (or per), m, spread, seed, latent, noise,
        min_separation, convention, and centers given as colon separated rows, IE: centers=0.1:0.2,0.8:0.9
        :param text: Str: The file contents.
        :raises ParameterError: On a malformed value.
        :return: SyntheticSpec
        """
        try:
            values = parse_key_value_text(text)
            if 'per' in values.keys() and 'per_cluster' not in values.keys():
                values['per_cluster'] = values.pop('per')
            spec_dict: dict = {}
            for key in ('clusters', 'per_cluster', 'm', 'latent'):
                if key in values.keys():
                    spec_dict[key] = int(values[key])
            for key in ('spread', 'noise', 'min_separation'):
                if key in values.keys():
                    spec_dict[key] = float(values[key])
            if 'seed' in values.keys():
                spec_dict['seed'] = int(values['seed'])
            if 'convention' in values.keys():
                spec_dict['convention'] = str(values['convention'])
            if 'centers' in values.keys():
                rows = values['centers'] if isinstance(values['centers'], list) else [values['centers']]
                spec_dict['centers'] = [[float(item) for item in row.split(':')] for row in rows]
        except (ValueError, TypeError) as e:
            raise ParameterError("invalid synthetic spec: %s" % str(e), exception=e)
        return cls.__from_dict__(spec_dict)

    @property
    def clusters(self) -> int:
        """Number of clusters."""
        return self._clusters

    @property
    def per_cluster(self) -> int:
        """Points per cluster."""
        return self._per_cluster

    @property
    def n(self) -> int:
        """Total number of points."""
        return self._clusters * self._per_cluster

    @property
    def m(self) -> int:
        """Output dimension."""
        return self._m

    @property
    def spread(self) -> float:
        """Within-cluster standard deviation, latent units."""
        return self._spread

    @property
    def seed(self) -> Optional[int]:
        """Default seed."""
        return self._seed

    @property
    def latent(self) -> int:
        """Latent dimension."""
        return self._latent

    @property
    def noise(self) -> float:
        """Post-projection noise standard deviation."""
        return self._noise

    @property
    def min_separation(self) -> float:
        """Target minimum distance between random latent centers."""
        return self._min_separation

    @property
    def centers(self) -> Optional[np.ndarray]:
        """Explicit latent centers, if given."""
        return self._centers

    @property
    def convention(self) -> str:
        """Normalization convention of the output."""
        return self._convention


def _separated_centers(rng: np.random.Generator, count: int, dimension: int, min_separation: float) -> np.ndarray:
    """
    Draw centers in the unit cube, rejecting candidates closer than min_separation to an accepted center. After
    1000 failed draws the farthest candidate seen is accepted.
    """
    centers: list[np.ndarray] = []
    for _ in range(count):
        best_candidate: Optional[np.ndarray] = None
        best_gap = -1.0
        for _ in range(1000):
            candidate = rng.uniform(0.0, 1.0, size=dimension)
            gap = min((float(np.linalg.norm(candidate - center)) for center in centers), default=math.inf)
            if gap > best_gap:
                best_candidate, best_gap = candidate, gap
            if gap >= min_separation:
                break
        centers.append(best_candidate)
    return np.array(centers)


def generate_synthetic(spec: SyntheticSpec, seed: Optional[int] = None) -> PointSet:
    """
    Generate a clustered point set. Rows are cluster-major: cluster 0's points first. Deterministic for a seed.
    :param spec: SyntheticSpec: The layout.
    :param seed: Optional[int]: Overrides spec.seed when given.
    :return: PointSet: Normalized points, labels 'c<cluster>_<index>'.
    """
    if not isinstance(spec, SyntheticSpec):
        __type_error__("spec", "SyntheticSpec", spec)
    rng = np.random.default_rng(spec.seed if seed is None else seed)
    if spec.centers is not None:
        centers = spec.centers
    else:
        centers = _separated_centers(rng, spec.clusters, spec.latent, spec.min_separation)
    latent_points = np.repeat(centers, spec.per_cluster, axis=0)
    if spec.spread > 0:
        latent_points = latent_points + rng.normal(0.0, spec.spread, size=latent_points.shape)
    projection = rng.standard_normal((spec.latent, spec.m))
    raw = latent_points @ projection
    if spec.noise > 0:
        raw = raw + rng.normal(0.0, spec.noise, size=raw.shape)
    labels = ["c%i_%i" % (cluster, index) for cluster in range(spec.clusters) for index in range(spec.per_cluster)]
    return normalize(raw, convention=spec.convention, labels=labels)


def generate_rademacher(n: int, m: int, seed: Optional[int] = None) -> PointSet:
    """
    Points with every coordinate drawn uniformly from {-1/2, +1/2}.
    :param n: Int: Number of points.
    :param m: Int: Number of dimensions.
    :param seed: Optional[int]: RNG seed.
    :return: PointSet
    """
    if not isinstance(n, int):
        __type_error__("n", "int", n)
    elif not isinstance(m, int):
        __type_error__("m", "int", m)
    rng = np.random.default_rng(seed)
    return PointSet(rng.choice(np.array([-0.5, 0.5]), size=(n, m)))


def triplet_distance_matrix(judgments: np.ndarray) -> DistanceMatrix:
    """
    Turn triplet judgments into distances. judgments[i, j, l] is the probability that i was judged more similar
    to j than to l. P(i~j) averages that over every l other than i and j, and d_ij = 1 - P(i~j) * P(j~i).
    :param judgments: np.ndarray: n x n x n probabilities, n >= 3.
    :raises DataValidationError: On a bad shape or a probability outside [0, 1].
    :return: DistanceMatrix
    """
    probabilities = np.asarray(judgments, dtype=np.float64)
    if probabilities.ndim != 3 or len(set(probabilities.shape)) != 1 or probabilities.shape[0] < 3:
        raise DataValidationError("judgments must be n x n x n with n >= 3, got %s." % str(probabilities.shape))
    if not bool(np.all(np.isfinite(probabilities))) or probabilities.min() < 0 or probabilities.max() > 1:
        raise DataValidationError("judgments must be probabilities in [0, 1].")
    n = probabilities.shape[0]
    index = np.arange(n)
    third = (index[None, None, :] != index[:, None, None]) & (index[None, None, :] != index[None, :, None])
    similar = np.where(third, probabilities, 0.0).sum(axis=2) / third.sum(axis=2)
    distances = 1.0 - similar * similar.T
    np.fill_diagonal(distances, 0.0)
    return DistanceMatrix(np.clip(distances, 0.0, 1.0))


def generate_triplet_matrix(n: int,
                            clusters: int = 5,
                            seed: Optional[int] = None,
                            spread: float = 0.08,
                            temperature: float = 0.25,
                            judgments: Optional[int] = None,
                            min_gap: float = 0.02,
                            attempts: int = 200,
                            ) -> DistanceMatrix:
    """
    Simulate a triplet-judgment distance matrix from clustered latent points in the unit square. Latent layouts
    are redrawn until every stage of the greedy with one center per cluster wins by at least min_gap; after
    `attempts` draws the layout with the widest smallest margin is kept and a KCenterWarning is issued.
    :param n: Int: Number of items, >= 3.
    :param clusters: Int: Number of latent clusters.
    :param seed: Optional[int]: RNG seed.
    :param spread: Float: Within-cluster standard deviation.
    :param temperature: Float: Logistic temperature turning squared-distance gaps into judgment probabilities.
    :param judgments: Optional[int]: Answers per triplet; when given, probabilities are replaced by empirical
        frequencies of that many simulated answers.
    :param min_gap: Float: Smallest acceptable greedy margin, >= 0.
    :param attempts: Int: Latent layouts to draw, >= 1.
    :return: DistanceMatrix
    """
    if not isinstance(n, int):
        __type_error__("n", "int", n)
    elif not isinstance(clusters, int):
        __type_error__("clusters", "int", clusters)
    elif not isinstance(attempts, int):
        __type_error__("attempts", "int", attempts)
    if n < 3 or clusters < 1 or temperature <= 0:
        raise ParameterError("need n >= 3, clusters >= 1 and temperature > 0.")
    if min_gap < 0 or attempts < 1:
        raise ParameterError("need min_gap >= 0 and attempts >= 1.")
    rng = np.random.default_rng(seed)
    k = min(clusters, n)
    best: Optional[DistanceMatrix] = None
    best_gap = -math.inf
    for _ in range(attempts):
        centers = _separated_centers(rng, clusters, 2, 0.3)
        assignment = np.arange(n) % clusters
        points = centers[assignment] + rng.normal(0.0, spread, size=(n, 2))
        squared = ((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
        probabilities = expit((squared[:, None, :] - squared[:, :, None]) / temperature)
        if judgments is not None:
            probabilities = rng.binomial(judgments, probabilities) / float(judgments)
        matrix = triplet_distance_matrix(probabilities)
        gap = min(greedy_gaps(matrix.d, k), default=math.inf)
        if gap > best_gap:
            best, best_gap = matrix, gap
        if gap >= min_gap:
            break
    if best_gap < min_gap and common.USE_WARNINGS:
        warn("no triplet layout in %i attempts reached a greedy margin of %r; the widest was %r."
             % (attempts, min_gap, best_gap), KCenterWarning)
    return best


########################################################################################################################
# File IO:
########################################################################################################################
def _is_float(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _read_csv_matrix(path: str) -> tuple[np.ndarray, Optional[list[str]]]:
    """
    Read a numeric CSV with an optional header row, detected by a non-numeric first cell.
    :raises DataValidationError: On a ragged row or non-numeric cell, naming row and column.
    """
    try:
        with open(path, 'r', newline='') as file_handle:
            rows = [row for row in csv.reader(file_handle) if len(row) > 0]
    except OSError as e:
        raise DataValidationError("unable to read '%s': %s" % (path, e.strerror), exception=e)
    if len(rows) == 0:
        raise DataValidationError("'%s' is empty." % path)
    header: Optional[list[str]] = None
    if not _is_float(rows[0][0].strip()):
        header = rows.pop(0)
    width = len(rows[0]) if len(rows) > 0 else 0
    values = np.empty((len(rows), width), dtype=np.float64)
    for row_index, row in enumerate(rows):
        if len(row) != width:
            raise DataValidationError("expected %i columns, got %i" % (width, len(row)), row=row_index, column=0)
        for column_index, cell in enumerate(row):
            try:
                values[row_index, column_index] = float(cell)
            except ValueError:
                raise DataValidationError("non-numeric value '%s'" % cell, row=row_index, column=column_index)
    return values, header


def load_points(path: str, convention: str = 'centered') -> PointSet:
    """
    Load and normalize a points file: CSV (one point per row) or KCPT binary.
    :param path: Str: The file path.
    :param convention: Str: Normalization convention.
    :raises DataValidationError: On a malformed file.
    :return: PointSet
    """
    try:
        with open(path, 'rb') as file_handle:
            magic = file_handle.read(len(BINARY_MAGIC))
    except OSError as e:
        raise DataValidationError("unable to read '%s': %s" % (path, e.strerror), exception=e)
    if magic == BINARY_MAGIC:
        with open(path, 'rb') as file_handle:
            payload = file_handle.read()
        if len(payload) < _BINARY_HEADER.size:
            raise DataValidationError("'%s' is truncated." % path)
        _, n, m = _BINARY_HEADER.unpack_from(payload, 0)
        expected = _BINARY_HEADER.size + 4 * n * m
        if len(payload) != expected:
            raise DataValidationError("'%s' holds %i bytes, expected %i for %i x %i points."
                                      % (path, len(payload), expected, n, m))
        values = np.frombuffer(payload, dtype='<f4', offset=_BINARY_HEADER.size).astype(np.float64).reshape(n, m)
        return normalize(values, convention=convention)
    values, _ = _read_csv_matrix(path)
    return normalize(values, convention=convention)


def save_points(points: PointSet, path: str, file_format: str = 'csv') -> None:
    """
    Write a point set as CSV or KCPT binary (float32, little-endian, row-major).
    :param points: PointSet: The points.
    :param path: Str: The output path.
    :param file_format: Str: 'csv' or 'bin'.
    :return: None
    """
    if not isinstance(points, PointSet):
        __type_error__("points", "PointSet", points)
    if file_format == 'bin':
        header = _BINARY_HEADER.pack(BINARY_MAGIC, points.n, points.m)
        with open(path, 'wb') as file_handle:
            file_handle.write(header)
            file_handle.write(np.ascontiguousarray(points.points, dtype='<f4').tobytes())
    elif file_format == 'csv':
        with open(path, 'w', newline='') as file_handle:
            writer = csv.writer(file_handle, lineterminator='\n')
            for row in points.points:
                writer.writerow([repr(float(value)) for value in row])
    else:
        raise ParameterError("file_format must be 'csv' or 'bin', got '%s'." % file_format)
    return


def load_distance_matrix(path: str) -> DistanceMatrix:
    """
    Load an n x n CSV distance matrix.
    :param path: Str: The file path.
    :raises DataValidationError: On a malformed, asymmetric or out of range matrix.
    :return: DistanceMatrix
    """
    values, _ = _read_csv_matrix(path)
    return DistanceMatrix(values)


def save_distance_matrix(matrix: DistanceMatrix, path: str) -> None:
    """
    Write a distance matrix as CSV.
    :param matrix: DistanceMatrix: The matrix.
    :param path: Str: The output path.
    :return: None
    """
    with open(path, 'w', newline='') as file_handle:
        writer = csv.writer(file_handle, lineterminator='\n')
        for row in matrix.d:
            writer.writerow([repr(float(value)) for value in row])
    return


def load_means(path: str) -> np.ndarray:
    """
    Load an a x b means matrix (boxes x arms) from CSV.
    :param path: Str: The file path.
    :raises DataValidationError: On a malformed file or non-finite entry.
    :return: np.ndarray
    """
    values, _ = _read_csv_matrix(path)
    bad = np.argwhere(~np.isfinite(values))
    if len(bad) > 0:
        raise DataValidationError("non-finite mean", row=int(bad[0][0]), column=int(bad[0][1]))
    return values


def load_synthetic_spec(path: str) -> SyntheticSpec:
    """
    Read a key=value synthetic spec file.
    :param path: Str: The file path.
    :return: SyntheticSpec
    """
    try:
        with open(path, 'r') as file_handle:
            text = file_handle.read()
    except OSError as e:
        raise DataValidationError("unable to read '%s': %s" % (path, e.strerror), exception=e)
    return SyntheticSpec.from_text(text)
