"""Tests for binarization of edge probabilities and refined-edge export."""

import numpy as np
import pytest
from scipy import integrate
from scipy.special import expit, logit

from ecl_gsr.autodiff.gradcheck import check_gradients
from ecl_gsr.autodiff.tape import Value
from ecl_gsr.core.exceptions import ConfigurationError
from ecl_gsr.refine.binarize import RefinedAdjacency, binarize, logistic_noise, pair_uniforms
from ecl_gsr.refine.edges import EdgeProbMatrix, edge_probabilities
from ecl_gsr.refine.export import export_refined_edges, refined_graph


def constant_pairs(p, count):
    pairs = np.stack([np.zeros(count, dtype=np.int64), np.arange(1, count + 1)], axis=1)
    return EdgeProbMatrix(probs=Value(np.full(count, p)), num_nodes=count + 1, pairs=pairs)


def expected_relaxed(p, temperature):
    def integrand(u):
        return expit((logit(p) + np.log(u / (1.0 - u))) / temperature)

    value, _ = integrate.quad(integrand, 0.0, 1.0)
    return value


def test_pair_uniforms_are_symmetric_and_seeded():
    a = pair_uniforms(7, [1, 5, 2], [5, 1, 9])
    b = pair_uniforms(7, [2], [9])

    assert a[0] == a[1]
    assert a[2] == b[0]
    assert ((a > 0) & (a < 1)).all()
    assert pair_uniforms(8, [1], [5])[0] != a[0]


def test_pair_uniforms_look_uniform():
    u = pair_uniforms(0, np.zeros(20000, dtype=np.int64), np.arange(1, 20001))

    assert u.mean() == pytest.approx(0.5, abs=0.01)
    assert np.histogram(u, bins=4, range=(0, 1))[0].min() > 4700


def test_eval_mode_thresholds_at_one_half():
    probs = edge_probabilities(np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]))

    refined = binarize(probs, temperature=0.5, mode="eval", seed=0)

    assert refined.mode == "hard"
    np.testing.assert_array_equal(refined.to_dense(), [[0, 1, 0], [1, 0, 1], [0, 1, 0]])


def test_train_mode_follows_relaxed_formula():
    probs = constant_pairs(0.3, 5)

    refined = binarize(probs, temperature=0.5, mode="train", seed=4)

    noise = logistic_noise(pair_uniforms(4, probs.pairs[:, 0], probs.pairs[:, 1]))
    np.testing.assert_allclose(refined.values.data, expit((logit(0.3) + noise) / 0.5))


def test_train_mode_mean_matches_quadrature():
    refined = binarize(constant_pairs(0.3, 20000), temperature=0.5, mode="train", seed=0)

    assert refined.values.data.mean() == pytest.approx(expected_relaxed(0.3, 0.5), abs=0.015)


def test_low_temperature_draws_bernoulli():
    refined = binarize(constant_pairs(0.3, 20000), temperature=0.01, mode="train", seed=1)

    assert (refined.values.data > 0.5).mean() == pytest.approx(0.3, abs=0.015)


@pytest.mark.parametrize("p,expected", [(0.0, 0.0), (1.0, 1.0)])
def test_extreme_probabilities_saturate(p, expected):
    refined = binarize(constant_pairs(p, 50), temperature=0.1, mode="train", seed=2)

    np.testing.assert_allclose(refined.values.data, expected, atol=1e-6)


def test_dense_train_mode_is_symmetric_with_zero_diagonal():
    probs = edge_probabilities(np.random.default_rng(0).normal(size=(6, 3)))

    values = binarize(probs, temperature=0.5, mode="train", seed=3).values.data

    np.testing.assert_allclose(values, values.T)
    np.testing.assert_array_equal(np.diag(values), np.zeros(6))


def test_relaxed_values_are_differentiable():
    p = Value([0.2, 0.5, 0.7], requires_grad=True)
    probs = EdgeProbMatrix(probs=p, num_nodes=4, pairs=np.array([[0, 1], [0, 2], [1, 3]]))
    weights = np.array([1.0, -2.0, 0.5])

    def f():
        return (binarize(probs, temperature=0.7, mode="train", seed=0).values * weights).sum()

    assert check_gradients(f, [p]) < 1e-6


@pytest.mark.parametrize("temperature,mode", [(0.0, "train"), (-1.0, "eval"), (0.5, "sample")])
def test_invalid_arguments(temperature, mode):
    with pytest.raises(ConfigurationError):
        binarize(constant_pairs(0.5, 2), temperature=temperature, mode=mode, seed=0)


def test_export_relaxed_edges(tmp_path):
    refined = RefinedAdjacency(
        values=Value([0.25, 0.0, 1.0]),
        num_nodes=3,
        mode="relaxed",
        pairs=np.array([[0, 1], [0, 2], [1, 2]]),
    )

    path = export_refined_edges(refined, tmp_path / "refined_edges.tsv")

    assert path.read_text(encoding="utf-8") == "0\t1\t0.25\n1\t2\t1.0\n"


def test_export_hard_edges(tmp_path, triangle):
    path = export_refined_edges(RefinedAdjacency.from_graph(triangle), tmp_path / "edges.tsv")

    assert path.read_text(encoding="utf-8") == "0\t1\n0\t2\n1\t2\n"


def test_refined_graph_keeps_masks(two_triangles):
    dense = np.zeros((7, 7))
    dense[0, 6] = dense[6, 0] = 1.0
    refined = RefinedAdjacency(values=Value(dense), num_nodes=7, mode="hard")

    graph = refined_graph(refined, two_triangles)

    assert graph.edges.tolist() == [[0, 6]]
    np.testing.assert_array_equal(graph.train_mask, two_triangles.train_mask)
    assert refined.num_edges == 1
