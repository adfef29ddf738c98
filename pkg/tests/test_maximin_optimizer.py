import numpy as np
import pytest

from PyKCenter.MaximinOptimizer import AscentConfig, MaximinInstance, WeightMatrix, support_mask, canonicalize, \
    objective_f, supergradient, lipschitz_bound, ascent_envelope, mirror_ascent, optimal_weights, t_star
from PyKCenter.Exceptions import OptimizerError, ParameterError

THREE_BOX_MEANS = [[0.45, 0.5, 0.55], [0.35, 0.4, 0.6], [0.3, 0.47, 0.52]]
THREE_BOX_WEIGHTS = [[0.3633, 0.1057, 0.0532], [0.3738, 0.0, 0.0], [0.1040, 0.0, 0.0]]


def test_objective_two_boxes_one_arm():
    instance = MaximinInstance([[0.6], [0.4]])
    value, binding = objective_f(instance, np.array([[0.5], [0.5]]))
    assert value == pytest.approx(0.005)
    assert binding == (1, 0)
    gradient = supergradient(instance, np.array([[0.5], [0.5]]))
    np.testing.assert_allclose(gradient, [[0.005], [0.005]])


def test_symmetric_instance_keeps_equal_weights():
    weights, t_value = mirror_ascent(MaximinInstance([[0.6], [0.4]]), AscentConfig(iterations=200))
    np.testing.assert_allclose(weights.omega, [[0.5], [0.5]])
    assert t_value == pytest.approx(200.0)
    assert t_star([[0.6], [0.4]], AscentConfig(iterations=200), sigma2=0.25) == pytest.approx(50.0)


def test_t_star_shrinks_as_gaps_grow():
    config = AscentConfig(iterations=500)
    close = t_star([[0.55, 0.6], [0.5, 0.7]], config)
    apart = t_star([[0.8, 0.9], [0.1, 0.7]], config)
    assert apart < close
    assert t_star([[0.9], [0.1]], config) == pytest.approx(12.5)


def test_canonicalize_orders_boxes_and_arms():
    permutation, canonical = canonicalize(MaximinInstance([[0.2, 0.9], [0.5, 0.3]]))
    np.testing.assert_allclose(canonical.mu, [[0.3, 0.5], [0.2, 0.9]])
    assert list(permutation.rows) == [1, 0]
    assert not permutation.is_identity
    original = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(permutation.unmap(permutation.apply(original)), original)
    identity, same = canonicalize(MaximinInstance(THREE_BOX_MEANS))
    assert identity.is_identity
    np.testing.assert_array_equal(same.mu, np.array(THREE_BOX_MEANS))


def test_averaged_iterate_stays_within_the_envelope():
    instance = MaximinInstance(THREE_BOX_MEANS)
    mask = support_mask(3, 3)
    uniform = mask / float(mask.sum())
    weights, _ = mirror_ascent(instance, AscentConfig(iterations=2000))
    value, _ = objective_f(instance, weights.omega)
    assert value >= objective_f(instance, uniform)[0] - ascent_envelope(instance, 2000)
    assert weights.omega[~mask].sum() == 0.0
    assert weights.omega.sum() == pytest.approx(1.0)
    assert ascent_envelope(instance, 8000) == pytest.approx(ascent_envelope(instance, 2000) / 2.0)
    assert lipschitz_bound(instance) == pytest.approx(0.3 ** 2 / 2.0 + 1e-6)


def _grid_best(instance: MaximinInstance, samples: int, rng: np.random.Generator) -> float:
    # Random points of the restricted simplex: the best row, then the rivals' first arms.
    a, b = instance.a, instance.b
    weights = rng.dirichlet(np.ones(a + b - 1), size=samples)
    best, rivals = weights[:, :b], weights[:, b:]
    half_square_gaps = (instance.mu[0, :][None, :] - instance.mu[1:, 0][:, None]) ** 2 / 2.0
    terms = best[:, None, :] * rivals[:, :, None] * half_square_gaps / (best[:, None, :] + rivals[:, :, None])
    return float(terms.min(axis=(1, 2)).max())


def test_averaged_iterate_against_a_grid_oracle():
    rng = np.random.default_rng(5)
    for _ in range(5):
        _, instance = canonicalize(MaximinInstance(rng.uniform(0.0, 1.0, size=(3, 3))))
        oracle = _grid_best(instance, 10 ** 4, rng)
        for iterations in (100, 1000, 10000):
            weights, _ = mirror_ascent(instance, AscentConfig(iterations=iterations))
            value, _ = objective_f(instance, weights.omega)
            assert value >= oracle - ascent_envelope(instance, iterations)


@pytest.mark.slow
def test_three_box_instance_weights():
    weights, t_value = optimal_weights(THREE_BOX_MEANS, AscentConfig(iterations=100000))
    assert np.abs(weights.omega - np.array(THREE_BOX_WEIGHTS)).max() <= 0.02
    assert np.isfinite(t_value) and t_value > 0


def test_optimal_weights_return_original_labels():
    means = [[0.2, 0.9], [0.5, 0.3]]
    weights, t_value = optimal_weights(means, AscentConfig(iterations=300))
    # Canonical support: all of box 1, plus box 0's smallest arm.
    assert weights.omega[0, 1] == 0.0
    assert np.all(weights.omega[1] > 0) and weights.omega[0, 0] > 0
    assert weights.support.tolist() == [[True, False], [True, True]]
    warm, _ = optimal_weights(means, AscentConfig(iterations=300), warm_start=weights.omega)
    assert warm.omega.sum() == pytest.approx(1.0)
    single, zero = optimal_weights([[0.2, 0.4]])
    assert zero == 0.0 and single.omega.tolist() == [[0.5, 0.5]]


def test_short_warm_start_stays_near_a_converged_solution():
    instance = MaximinInstance(THREE_BOX_MEANS)
    converged, _ = mirror_ascent(instance, AscentConfig(iterations=5000))
    best, _ = objective_f(instance, converged.omega)
    warm, t_value = mirror_ascent(instance, AscentConfig(iterations=200), warm_start=converged.omega)
    value, _ = objective_f(instance, warm.omega)
    assert value >= best - ascent_envelope(instance, 200)
    assert t_value == pytest.approx(1.0 / value)
    assert warm.omega[~support_mask(3, 3)].sum() == 0.0


def test_validation():
    with pytest.raises(ParameterError):
        MaximinInstance([[0.1, 0.2, 0.3]])
    with pytest.raises(OptimizerError):
        MaximinInstance([[0.1, np.nan], [0.2, 0.3]])
    with pytest.raises(ParameterError):
        AscentConfig(iterations=0)
    with pytest.raises(ParameterError):
        WeightMatrix([[0.5, 0.6]])
    with pytest.raises(ParameterError):
        WeightMatrix([[0.5, 0.5], [0.0, 0.0]], support=np.array([[True, False], [True, False]]))
    config = AscentConfig(iterations=10, lipschitz=0.5, averaging=False)
    assert AscentConfig.__from_dict__(config.__to_dict__()).__to_dict__() == config.__to_dict__()
