"""GCN encoder and pooled projection head."""

import numpy as np

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.tape import as_value
from ecl_gsr.core.exceptions import ShapeError


def _propagate(rows, cols, weights, num_nodes, x, encoder_weights):
    h = as_value(x)
    last = len(encoder_weights) - 1
    for layer, w in enumerate(encoder_weights):
        h = ops.spmm(rows, cols, weights, ops.matmul(h, w), num_nodes)
        if layer < last:
            h = ops.relu(h)
    return h


def encode(params, adjacency, x):
    """
    Node representations Â·ReLU(Â·ReLU(Â·x·W1)·W2)·W3.

    Args:
        params: EclParams
        adjacency: NormalizedAdjacency, or a Subgraph carrying ``local_adj``
        x: (n, D + D_s) feature matrix (array or Value)

    Returns:
        Value of shape (n, encoder_dim)
    """
    adjacency = getattr(adjacency, "local_adj", adjacency)
    x = as_value(x)
    if x.ndim != 2 or x.shape[1] != params.input_dim:
        raise ShapeError(f"Encoder expects {params.input_dim} input columns, got shape {x.shape}")
    if x.shape[0] != adjacency.num_nodes:
        raise ShapeError(f"{x.shape[0]} feature rows for {adjacency.num_nodes} nodes")
    return _propagate(
        adjacency.rows,
        adjacency.cols,
        adjacency.weights,
        adjacency.num_nodes,
        x,
        params.encoder_weights,
    )


def project(params, z_nodes):
    layers = params.projector_layers
    h = as_value(z_nodes)
    for i, (w, b) in enumerate(layers):
        h = ops.add(ops.matmul(h, w), b)
        if i < len(layers) - 1:
            h = ops.relu(h)
    return h


def project_pool(params, z_nodes):
    """Projector applied per node row, then mean over rows; returns (1, F)."""
    z_nodes = as_value(z_nodes)
    if z_nodes.ndim != 2 or z_nodes.shape[0] == 0:
        raise ShapeError(f"project_pool needs at least one node row, got shape {z_nodes.shape}")
    return ops.mean_pool_rows(project(params, z_nodes))


def embed_views(params, adjacencies, features):
    """
    Pooled view embeddings for many small graphs in one pass.

    The views are stacked into one block-diagonal graph so the encoder runs
    once; a second sparse product averages each block.

    Args:
        params: EclParams
        adjacencies: NormalizedAdjacency per view
        features: Feature matrix (array or Value) per view

    Returns:
        Value of shape (len(views), F)
    """
    if len(adjacencies) != len(features) or not adjacencies:
        raise ShapeError("embed_views needs one feature matrix per adjacency")
    rows, cols, weights, segment = [], [], [], []
    offset = 0
    for k, (adj, x) in enumerate(zip(adjacencies, features)):
        if x.shape[0] != adj.num_nodes:
            raise ShapeError(f"View {k}: {x.shape[0]} feature rows for {adj.num_nodes} nodes")
        rows.append(adj.rows + offset)
        cols.append(adj.cols + offset)
        weights.append(adj.weights)
        segment.append(np.full(adj.num_nodes, k, dtype=np.int64))
        offset += adj.num_nodes

    x = ops.concat_rows([as_value(f) for f in features])
    if x.shape[1] != params.input_dim:
        raise ShapeError(f"Encoder expects {params.input_dim} input columns, got {x.shape[1]}")
    z = _propagate(
        np.concatenate(rows),
        np.concatenate(cols),
        np.concatenate(weights),
        offset,
        x,
        params.encoder_weights,
    )
    projected = project(params, z)

    segment = np.concatenate(segment)
    sizes = np.bincount(segment).astype(np.float64)
    return ops.spmm(
        segment, np.arange(offset), 1.0 / sizes[segment], projected, len(adjacencies)
    )
