"""Tests for the GCN encoder and projection head."""

import numpy as np
import pytest

from ecl_gsr.core.exceptions import ShapeError
from ecl_gsr.embedding.dual import build_dual
from ecl_gsr.graph.adjacency import normalize_adjacency, normalize_pairs
from ecl_gsr.model.encoder import embed_views, encode, project, project_pool
from ecl_gsr.model.params import EclParams
from ecl_gsr.sampling.subgraphs import subgraph_from_nodes


def relu(x):
    return np.maximum(x, 0.0)


@pytest.fixture
def params():
    return EclParams.init(input_dim=4, encoder_dim=5, projector_dim=3, seed=0)


def test_parameter_names_and_shapes(params):
    shapes = {name: p.shape for name, p in params.store.items()}

    assert shapes == {
        "encoder.w1": (4, 5),
        "encoder.w2": (5, 5),
        "encoder.w3": (5, 5),
        "projector.b1": (1, 3),
        "projector.b2": (1, 3),
        "projector.w1": (5, 3),
        "projector.w2": (3, 3),
    }


@pytest.mark.parametrize("first,expected", [(1.5, -3.0), (-1.5, 0.0)])
def test_single_node_scalar_chain(first, expected):
    params = EclParams.init(input_dim=1, encoder_dim=1, projector_dim=1)
    for name, value in (("encoder.w1", first), ("encoder.w2", 2.0), ("encoder.w3", -0.5)):
        params.store[name].data[...] = value

    out = encode(params, normalize_pairs(1, []), np.array([[2.0]]))

    assert out.data[0, 0] == pytest.approx(expected)


def test_encode_matches_dense_reference(params, two_triangles):
    a_hat = normalize_adjacency(two_triangles).to_dense()
    w1, w2, w3 = (w.data for w in params.encoder_weights)
    x = two_triangles.features

    expected = a_hat @ relu(a_hat @ relu(a_hat @ x @ w1) @ w2) @ w3
    out = encode(params, normalize_adjacency(two_triangles), x)

    np.testing.assert_allclose(out.data, expected, atol=1e-12)


def test_project_pool_is_mean_of_projected_rows(params):
    z = np.random.default_rng(1).normal(size=(4, 5))
    (w1, b1), (w2, b2) = [(w.data, b.data) for w, b in params.projector_layers]

    expected = (relu(z @ w1 + b1) @ w2 + b2).mean(axis=0, keepdims=True)

    np.testing.assert_allclose(project_pool(params, z).data, expected, atol=1e-12)
    assert project(params, z).shape == (4, 3)


def test_embed_views_matches_per_view_encoding(params, two_triangles):
    dual = build_dual(two_triangles, np.zeros((7, 0)))
    subs = [subgraph_from_nodes(dual, ids) for ids in ([0, 1, 2], [3, 4], [6])]

    batched = embed_views(params, [s.local_adj for s in subs], [s.x_local for s in subs])

    for row, sub in zip(batched.data, subs):
        single = project_pool(params, encode(params, sub, sub.x_local))
        np.testing.assert_allclose(row, single.data[0], atol=1e-12)


def test_encode_rejects_wrong_width(params, two_triangles):
    with pytest.raises(ShapeError):
        encode(params, normalize_adjacency(two_triangles), np.ones((7, 3)))


def test_encode_rejects_wrong_row_count(params, two_triangles):
    with pytest.raises(ShapeError):
        encode(params, normalize_adjacency(two_triangles), np.ones((6, 4)))


def test_project_pool_rejects_empty():
    params = EclParams.init(input_dim=2, encoder_dim=2, projector_dim=2)

    with pytest.raises(ShapeError):
        project_pool(params, np.ones((0, 2)))
