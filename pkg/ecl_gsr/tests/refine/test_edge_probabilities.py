"""Tests for edge probabilities and candidate pairs."""

import numpy as np
import pytest

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.gradcheck import check_gradients
from ecl_gsr.autodiff.tape import Value
from ecl_gsr.core.exceptions import MemoryGuardError, ShapeError
from ecl_gsr.embedding.dual import build_dual
from ecl_gsr.model.params import EclParams
from ecl_gsr.refine.binarize import binarize
from ecl_gsr.refine.edges import (
    DENSE,
    build_candidates,
    center_rows,
    cosine_neighbors,
    edge_probabilities,
    full_node_embeddings,
    refinement_embeddings,
)

AXES = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])


def test_dense_probabilities_from_cosine():
    probs = edge_probabilities(AXES)

    assert probs.is_dense
    np.testing.assert_allclose(
        probs.values, [[0.0, 0.5, 0.0], [0.5, 0.0, 0.5], [0.0, 0.5, 0.0]], atol=1e-12
    )


def test_identical_rows_get_probability_one():
    probs = edge_probabilities(np.array([[2.0, 1.0], [4.0, 2.0]]))

    assert probs.values[0, 1] == pytest.approx(1.0)


def test_probabilities_ignore_row_scale():
    z = np.random.default_rng(0).normal(size=(5, 3))
    scales = np.array([[1.0], [2.0], [0.5], [10.0], [3.0]])

    np.testing.assert_allclose(
        edge_probabilities(z * scales).values, edge_probabilities(z).values, atol=1e-12
    )


def test_pair_mode_matches_dense_entries():
    z = np.random.default_rng(1).normal(size=(6, 4))
    pairs = np.array([[0, 1], [2, 5], [3, 4]])

    sparse = edge_probabilities(z, pairs)
    dense = edge_probabilities(z).values

    assert not sparse.is_dense
    np.testing.assert_allclose(sparse.values, dense[pairs[:, 0], pairs[:, 1]], atol=1e-12)


def test_single_node_is_rejected():
    with pytest.raises(ShapeError):
        edge_probabilities(np.ones((1, 3)))


def test_small_graph_uses_dense_mode(two_triangles):
    assert build_candidates(np.ones((7, 2)), two_triangles) == DENSE


def test_cosine_neighbors_match_brute_force():
    z = np.random.default_rng(2).normal(size=(9, 3))
    unit = z / np.linalg.norm(z, axis=1, keepdims=True)
    cos = unit @ unit.T
    np.fill_diagonal(cos, -np.inf)

    pairs = cosine_neighbors(z, k=2)

    expected = {(i, int(j)) for i in range(9) for j in np.argsort(-cos[i])[:2]}
    assert {tuple(p) for p in pairs.tolist()} == expected


def test_candidate_pairs_cover_edges_and_neighbors(two_triangles):
    z = np.random.default_rng(3).normal(size=(7, 3))

    pairs = build_candidates(z, two_triangles, k=1, dense_limit=2)

    found = {tuple(p) for p in pairs.tolist()}
    assert {tuple(e) for e in two_triangles.edges.tolist()} <= found
    for i, j in cosine_neighbors(z, 1).tolist():
        assert (min(i, j), max(i, j)) in found
    assert all(i < j for i, j in found)


def test_full_graph_guard(two_triangles):
    dual = build_dual(two_triangles, np.zeros((7, 0)))
    params = EclParams.init(input_dim=4, encoder_dim=3, projector_dim=3)

    assert full_node_embeddings(params, dual).shape == (7, 3)
    with pytest.raises(MemoryGuardError):
        full_node_embeddings(params, dual, max_nodes=3)


# Two groups that both lie in the positive quadrant.
SAME_SIGN = np.array([[1.0, 0.1], [1.0, 0.2], [0.1, 1.0], [0.2, 1.0]])


def hard_pairs(z):
    refined = binarize(edge_probabilities(z), temperature=0.5, mode="eval", seed=0)
    return {tuple(p) for p in refined.weighted_edges()[0].tolist()}


def test_positive_rows_give_complete_hard_graph():
    assert len(hard_pairs(SAME_SIGN)) == 6


def test_centered_rows_keep_only_within_group_pairs():
    centered = center_rows(SAME_SIGN)

    np.testing.assert_allclose(centered.data.sum(axis=0), 0.0, atol=1e-12)
    assert hard_pairs(centered) == {(0, 1), (2, 3)}


def test_centered_probabilities_ignore_shared_offset():
    z = np.random.default_rng(4).normal(size=(8, 5))
    shifted = z + np.array([3.0, -1.0, 7.0, 0.5, 2.0])

    np.testing.assert_allclose(
        edge_probabilities(center_rows(shifted)).values,
        edge_probabilities(center_rows(z)).values,
        atol=1e-10,
    )


def test_centered_graph_is_never_complete():
    rng = np.random.default_rng(5)
    for _ in range(20):
        z = np.abs(rng.normal(size=(10, 4))) + 1.0
        assert len(hard_pairs(center_rows(z))) < 45


def test_centering_passes_gradients():
    z = Value(np.random.default_rng(6).normal(size=(4, 3)), requires_grad=True)
    weights = np.random.default_rng(7).normal(size=(4, 3))

    def f():
        return ops.sum_(ops.mul(center_rows(z), weights))

    assert check_gradients(f, [z]) < 1e-6


def test_refinement_embeddings_centering_switch(two_triangles):
    dual = build_dual(two_triangles, np.zeros((7, 0)))
    params = EclParams.init(input_dim=4, encoder_dim=3, projector_dim=3)

    raw = refinement_embeddings(params, dual, center=False).data
    centered = refinement_embeddings(params, dual).data

    np.testing.assert_allclose(raw, full_node_embeddings(params, dual).data, atol=1e-12)
    np.testing.assert_allclose(centered, raw - raw.mean(axis=0), atol=1e-12)
