import itertools

import numpy as np
import pytest

import PyKCenter.common as common
from PyKCenter.Dataset import bottleneck, optimal_kcenter_bruteforce, SyntheticSpec, generate_synthetic, \
    generate_rademacher, generate_triplet_matrix, triplet_distance_matrix, load_points, save_points, \
    load_distance_matrix, save_distance_matrix, load_means, load_synthetic_spec, BINARY_MAGIC
from PyKCenter.GreedyExact import greedy_exact, greedy_gaps
from PyKCenter.Exceptions import DataValidationError, ParameterError, BruteForceRefused, KCenterWarning


def test_bottleneck_examples(line_points):
    assert bottleneck(line_points, [0]) == (2, pytest.approx(1.0))
    assert bottleneck(line_points, [0, 2]) == (1, pytest.approx(0.25))


def test_bottleneck_matches_double_loop(random_points):
    points = random_points(8, 3, 5)
    centers = [1, 6]
    best_v, best_value = None, -1.0
    for v in range(8):
        if v in centers:
            continue
        value = min(points.exact_distance(v, s) for s in centers)
        if value > best_value:
            best_v, best_value = v, value
    assert bottleneck(points, centers) == (best_v, pytest.approx(best_value))


def test_bottleneck_needs_a_remaining_vertex(line_points):
    with pytest.raises(ParameterError):
        bottleneck(line_points, [0, 1, 2])
    with pytest.raises(ParameterError):
        bottleneck(line_points, [])


def test_bruteforce_examples(line_points):
    centers, value = optimal_kcenter_bruteforce(line_points, 2)
    assert value == pytest.approx(0.25)
    assert list(centers) == [0, 1]
    _, value = optimal_kcenter_bruteforce(line_points, 3)
    assert value == 0.0


def test_bruteforce_matches_independent_enumeration(random_points):
    points = random_points(10, 4, 9)
    distances = points.distance_matrix()
    expected = min(max(min(distances[v, s] for s in subset) for v in range(10))
                   for subset in itertools.combinations(range(10), 3))
    _, value = optimal_kcenter_bruteforce(points, 3)
    assert value == pytest.approx(expected)


def test_bruteforce_refuses_large_instances(random_points, monkeypatch):
    monkeypatch.setattr(common, 'BRUTE_FORCE_LIMIT', 100)
    with pytest.raises(BruteForceRefused):
        optimal_kcenter_bruteforce(random_points(10, 2, 0), 3)


def test_greedy_is_a_two_approximation(random_points):
    rng = np.random.default_rng(42)
    for trial in range(50):
        n = int(rng.integers(4, 13))
        m = int(rng.integers(1, 6))
        k = int(rng.integers(2, 4))
        points = random_points(n, m, 1000 + trial)
        greedy = greedy_exact(points, k)
        _, greedy_value = bottleneck(points, greedy.centers)
        _, optimum = optimal_kcenter_bruteforce(points, k)
        # Squared distances: the triangle inequality holds for the root.
        assert np.sqrt(greedy_value) <= 2.0 * np.sqrt(optimum) + 1e-12


def test_synthetic_is_deterministic_and_cluster_major():
    spec = SyntheticSpec(clusters=4, per_cluster=10, m=50, spread=0.01, seed=7)
    first = generate_synthetic(spec)
    second = generate_synthetic(spec)
    assert first.n == 40 and first.m == 50
    np.testing.assert_array_equal(first.points, second.points)
    assert first.labels[0] == 'c0_0' and first.labels[39] == 'c3_9'
    assert not np.array_equal(generate_synthetic(spec, seed=8).points, first.points)


def test_zero_spread_points_coincide_with_their_cluster():
    points = generate_synthetic(SyntheticSpec(clusters=3, per_cluster=4, m=10, spread=0.0, seed=1))
    distances = points.distance_matrix()
    for cluster in range(3):
        block = distances[cluster * 4:(cluster + 1) * 4, cluster * 4:(cluster + 1) * 4]
        assert block.max() == pytest.approx(0.0, abs=1e-15)


def test_synthetic_spec_text_and_dict(spec_text):
    spec = SyntheticSpec.from_text(spec_text + "centers=0.1:0.2,0.8:0.9,0.1:0.9,0.9:0.1\n")
    assert spec.n == 40 and spec.m == 200 and spec.latent == 2
    assert spec.centers.shape == (4, 2)
    restored = SyntheticSpec.__from_dict__(spec.__to_dict__())
    assert restored.__to_dict__() == spec.__to_dict__()
    with pytest.raises(ParameterError):
        SyntheticSpec.from_text("clusters=four\nper=2\nm=3\n")
    with pytest.raises(ParameterError):
        SyntheticSpec(clusters=2, per_cluster=2, m=3, latent=2, centers=[[0.0, 0.0]])


def test_rademacher_coordinates():
    points = generate_rademacher(6, 30, seed=3)
    assert set(np.unique(points.points)) <= {-0.5, 0.5}
    np.testing.assert_array_equal(points.points, generate_rademacher(6, 30, seed=3).points)


def test_triplet_distance_matrix_formula():
    judgments = np.full((3, 3, 3), 0.5)
    judgments[0, 1, 2] = 1.0
    judgments[1, 0, 2] = 0.8
    matrix = triplet_distance_matrix(judgments)
    assert matrix.exact_distance(0, 1) == pytest.approx(1.0 - 1.0 * 0.8)
    assert matrix.exact_distance(0, 2) == pytest.approx(1.0 - 0.5 * 0.5)


def test_triplet_matrix_at_zappos_scale():
    matrix = generate_triplet_matrix(55, clusters=5, seed=0, min_gap=0.0)
    assert matrix.n == 55
    assert matrix.d.min() >= 0.0 and matrix.d.max() <= 1.0
    with pytest.raises(DataValidationError):
        triplet_distance_matrix(np.full((3, 3, 3), 1.5))


def test_triplet_matrix_has_resolvable_greedy_stages():
    matrix = generate_triplet_matrix(15, clusters=5, seed=0)
    gaps = greedy_gaps(matrix.d, 5)
    assert len(gaps) == 4 and min(gaps) >= 0.02
    np.testing.assert_array_equal(matrix.d, generate_triplet_matrix(15, clusters=5, seed=0).d)
    with pytest.warns(KCenterWarning):
        fallback = generate_triplet_matrix(9, clusters=3, seed=1, min_gap=2.0, attempts=3)
    assert fallback.n == 9
    with pytest.raises(ParameterError):
        generate_triplet_matrix(9, attempts=0)


def test_points_csv_and_binary_round_trip(tmp_path, small_clusters):
    csv_path = tmp_path / "points.csv"
    bin_path = tmp_path / "points.bin"
    save_points(small_clusters, str(csv_path))
    save_points(small_clusters, str(bin_path), 'bin')
    assert bin_path.read_bytes()[:4] == BINARY_MAGIC
    from_csv = load_points(str(csv_path))
    from_bin = load_points(str(bin_path))
    assert from_csv.n == from_bin.n == small_clusters.n
    np.testing.assert_allclose(from_csv.distance_matrix(), small_clusters.distance_matrix(), atol=1e-12)
    np.testing.assert_allclose(from_bin.distance_matrix(), small_clusters.distance_matrix(), atol=1e-5)
    with pytest.raises(ParameterError):
        save_points(small_clusters, str(tmp_path / "points.txt"), 'txt')


def test_load_points_examples_and_errors(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("0,0\n1,0\n0,1\n")
    points = load_points(str(path))
    assert (points.n, points.m) == (3, 2)
    headed = tmp_path / "headed.csv"
    headed.write_text("x,y\n0,0\n1,0\n0,1\n")
    assert load_points(str(headed)).n == 3
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("0,0\n1\n")
    with pytest.raises(DataValidationError) as caught:
        load_points(str(ragged))
    assert caught.value.row == 1
    text = tmp_path / "text.csv"
    text.write_text("0,0\n1,abc\n")
    with pytest.raises(DataValidationError) as caught:
        load_points(str(text))
    assert (caught.value.row, caught.value.column) == (1, 1)
    truncated = tmp_path / "short.bin"
    truncated.write_bytes(BINARY_MAGIC + b"\x02\x00")
    with pytest.raises(DataValidationError):
        load_points(str(truncated))
    with pytest.raises(DataValidationError):
        load_points(str(tmp_path / "missing.csv"))


def test_distance_matrix_files(tmp_path, line_matrix):
    path = tmp_path / "d.csv"
    save_distance_matrix(line_matrix, str(path))
    np.testing.assert_allclose(load_distance_matrix(str(path)).d, line_matrix.d)
    asymmetric = tmp_path / "bad.csv"
    asymmetric.write_text("0,0.2,0.3\n0.2,0,0.4\n0.3,0.5,0\n")
    with pytest.raises(DataValidationError):
        load_distance_matrix(str(asymmetric))


def test_means_and_spec_files(tmp_path, spec_text):
    means = tmp_path / "means.csv"
    means.write_text("0.45,0.5,0.55\n0.35,0.4,0.6\n0.3,0.47,0.52\n")
    assert load_means(str(means)).shape == (3, 3)
    spec = tmp_path / "spec.txt"
    spec.write_text(spec_text)
    assert load_synthetic_spec(str(spec)).clusters == 4
