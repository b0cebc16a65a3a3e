"""Shared fixtures: tiny graphs with known structure."""

import numpy as np
import pytest

from ecl_gsr.config.train_config import TrainConfig
from ecl_gsr.graph.model import UNLABELED, Graph


def make_graph(num_nodes, edges, features=None, labels=None, train=(), val=(), test=()):
    if features is None:
        features = np.eye(num_nodes, dtype=np.float64)
    if labels is None:
        labels = np.zeros(num_nodes, dtype=np.int64)
    return Graph(
        num_nodes=num_nodes,
        edges=np.asarray(edges, dtype=np.int64).reshape(-1, 2),
        features=features,
        labels=labels,
        train_mask=np.asarray(train, dtype=np.int64),
        val_mask=np.asarray(val, dtype=np.int64),
        test_mask=np.asarray(test, dtype=np.int64),
    )


@pytest.fixture
def triangle():
    """Nodes 0-1-2 fully connected."""
    return make_graph(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def two_triangles():
    """Two disjoint triangles labeled 0 and 1, one unlabeled isolated node."""
    labels = np.array([0, 0, 0, 1, 1, 1, UNLABELED])
    features = np.random.default_rng(0).normal(size=(7, 4))
    return make_graph(
        7,
        [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)],
        features=features,
        labels=labels,
        train=[0, 3],
        val=[1, 4],
        test=[2, 5],
    )


@pytest.fixture
def tiny_config():
    """Fast settings for end-to-end tests on a small SBM graph."""
    return TrainConfig(
        epochs=2,
        batch_n=4,
        edges_per_subgraph=4,
        encoder_dim=8,
        projector_dim=8,
        classifier_width=8,
        walk_length=8,
        walks_per_node=2,
        deepwalk_epochs=1,
        sbm_blocks=2,
        sbm_per_block=10,
        sbm_p_intra=0.5,
        sbm_p_inter=0.05,
        sbm_feat_dim=4,
        sbm_add_ratio=0.2,
        train_ratio=0.2,
        val_fraction=0.2,
        test_fraction=0.4,
        seed=3,
    )


@pytest.fixture
def graph_factory():
    """Build a Graph from plain lists."""
    return make_graph
