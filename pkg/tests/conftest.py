import numpy as np
import pytest

import PyKCenter.common as common
from PyKCenter.PointSet import PointSet
from PyKCenter.DistanceMatrix import DistanceMatrix
from PyKCenter.Dataset import SyntheticSpec, generate_synthetic

REFERENCE_SPEC = {
    'clusters': 4, 'per_cluster': 10, 'm': 200, 'spread': 0.08, 'latent': 2, 'min_separation': 0.35, 'seed': 7,
}


@pytest.fixture(autouse=True)
def warnings_on():
    common.USE_WARNINGS = True
    yield
    common.USE_WARNINGS = True


@pytest.fixture
def line_points() -> PointSet:
    """1-D points -0.5, 0, 0.5."""
    return PointSet([[-0.5], [0.0], [0.5]])


@pytest.fixture
def line_matrix(line_points) -> DistanceMatrix:
    return DistanceMatrix(line_points.distance_matrix())


@pytest.fixture
def small_clusters() -> PointSet:
    """Three tight clusters of four points in 20 dimensions."""
    return generate_synthetic(SyntheticSpec(clusters=3, per_cluster=4, m=20, spread=0.02, seed=11,
                                            min_separation=0.4))


@pytest.fixture(scope='session')
def reference_points() -> PointSet:
    """Four well separated clusters of ten points, m = 200."""
    return generate_synthetic(SyntheticSpec(**REFERENCE_SPEC))


@pytest.fixture
def random_points():
    def make(n: int, m: int, seed: int) -> PointSet:
        rng = np.random.default_rng(seed)
        return PointSet(rng.uniform(-0.5, 0.5, size=(n, m)))
    return make


@pytest.fixture
def spec_text() -> str:
    return "\n".join("%s=%s" % (key, value) for key, value in REFERENCE_SPEC.items()) + "\n"
