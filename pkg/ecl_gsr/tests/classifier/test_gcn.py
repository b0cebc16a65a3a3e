"""Tests for the GCN classifier."""

import numpy as np
import pytest

from ecl_gsr.autodiff.gradcheck import check_gradients
from ecl_gsr.autodiff.tape import Value
from ecl_gsr.classifier.gcn import (
    ClassifierParams,
    accuracy,
    ce_loss,
    classify,
    export_predictions,
    predict,
)
from ecl_gsr.core.exceptions import ShapeError
from ecl_gsr.graph.adjacency import normalize_adjacency
from ecl_gsr.refine.binarize import RefinedAdjacency


def relu(x):
    return np.maximum(x, 0.0)


def reference_forward(dense_adj, x, weights):
    a = dense_adj + np.eye(len(dense_adj))
    inv_sqrt = 1.0 / np.sqrt(a.sum(axis=1))
    a_hat = a * inv_sqrt[:, None] * inv_sqrt[None, :]
    h = x
    for layer, w in enumerate(weights):
        h = a_hat @ h @ w
        if layer < len(weights) - 1:
            h = relu(h)
    return h


@pytest.fixture
def params():
    return ClassifierParams.init(input_dim=4, num_classes=2, width=5, seed=0)


@pytest.fixture
def weighted_dense():
    rng = np.random.default_rng(1)
    upper = np.triu(rng.uniform(size=(7, 7)), k=1)
    return upper + upper.T


def test_zero_weights_give_uniform_probabilities(two_triangles):
    params = ClassifierParams.init(input_dim=4, num_classes=7, width=3)
    for w in params.weights:
        w.data[...] = 0.0

    _, probs = classify(params, RefinedAdjacency.from_graph(two_triangles), two_triangles.features)

    np.testing.assert_allclose(probs.data, np.full((7, 7), 1 / 7))
    loss = ce_loss(probs, np.arange(7), np.arange(7))
    assert loss.item() == pytest.approx(np.log(7.0))


def test_dense_forward_matches_reference(params, two_triangles, weighted_dense):
    refined = RefinedAdjacency(values=Value(weighted_dense), num_nodes=7, mode="relaxed")

    logits, probs = classify(params, refined, two_triangles.features)

    weights = [w.data for w in params.weights]
    expected = reference_forward(weighted_dense, two_triangles.features, weights)
    np.testing.assert_allclose(logits.data, expected, atol=1e-12)
    np.testing.assert_allclose(probs.data.sum(axis=1), np.ones(7))


def test_pair_form_matches_dense_form(params, two_triangles, weighted_dense):
    iu, ju = np.triu_indices(7, k=1)
    sparse = RefinedAdjacency(
        values=Value(weighted_dense[iu, ju]),
        num_nodes=7,
        mode="relaxed",
        pairs=np.stack([iu, ju], axis=1),
    )
    dense = RefinedAdjacency(values=Value(weighted_dense), num_nodes=7, mode="relaxed")

    np.testing.assert_allclose(
        classify(params, sparse, two_triangles.features)[0].data,
        classify(params, dense, two_triangles.features)[0].data,
        atol=1e-12,
    )


def test_original_graph_uses_standard_normalization(params, two_triangles):
    refined = RefinedAdjacency.from_graph(two_triangles)
    logits, _ = classify(params, refined, two_triangles.features)

    a_hat = normalize_adjacency(two_triangles).to_dense()
    h = two_triangles.features
    for layer, w in enumerate(params.weights):
        h = a_hat @ h @ w.data
        if layer < 2:
            h = relu(h)
    np.testing.assert_allclose(logits.data, h, atol=1e-12)


def test_loss_gradients_reach_parameters_and_adjacency(params, two_triangles, weighted_dense):
    iu, ju = np.triu_indices(7, k=1)
    values = Value(weighted_dense[iu, ju] + 0.1, requires_grad=True)
    refined = RefinedAdjacency(
        values=values, num_nodes=7, mode="relaxed", pairs=np.stack([iu, ju], axis=1)
    )

    def f():
        _, probs = classify(params, refined, two_triangles.features)
        return ce_loss(probs, two_triangles.labels, two_triangles.train_mask)

    assert check_gradients(f, params.store.values() + [values]) < 1e-6


def test_dense_adjacency_gradient(params, two_triangles, weighted_dense):
    values = Value(weighted_dense, requires_grad=True)
    refined = RefinedAdjacency(values=values, num_nodes=7, mode="relaxed")

    def f():
        _, probs = classify(params, refined, two_triangles.features)
        return ce_loss(probs, two_triangles.labels, two_triangles.train_mask)

    assert check_gradients(f, [values]) < 1e-6


def test_accuracy_and_tie_break():
    probs = np.array([[0.9, 0.1], [0.2, 0.8], [0.5, 0.5], [0.6, 0.4]])
    labels = np.array([0, 1, 1, 0])

    assert predict(probs).tolist() == [0, 1, 0, 0]
    assert accuracy(probs, labels, [0, 1, 2, 3]) == pytest.approx(0.75)


def test_empty_mask_is_rejected():
    probs = Value(np.full((2, 2), 0.5))

    with pytest.raises(ShapeError):
        ce_loss(probs, np.array([0, 1]), [])
    with pytest.raises(ShapeError):
        accuracy(probs, np.array([0, 1]), [])


def test_classify_rejects_wrong_feature_shape(params, two_triangles):
    with pytest.raises(ShapeError):
        classify(params, RefinedAdjacency.from_graph(two_triangles), np.ones((7, 3)))


def test_export_predictions(tmp_path):
    path = export_predictions(np.array([[0.25, 0.75], [0.5, 0.5]]), tmp_path / "pred.tsv")

    assert path.read_text(encoding="utf-8") == "0\t1\t0.75\n1\t0\t0.5\n"
