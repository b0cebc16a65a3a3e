"""Synthetic graph generation."""

import networkx as nx
import numpy as np
import structlog

from ecl_gsr.core.exceptions import ConfigurationError
from ecl_gsr.graph.model import Graph, canonical_edges

logger = structlog.get_logger(__name__)


def sbm_generate(blocks, nodes_per_block, p_intra, p_inter, feat_dim, feat_noise, seed):
    """
    Sample a stochastic block model graph with block-centroid features.

    Nodes are numbered block by block. Each node's feature row is the one-hot
    vector of its block (first ``blocks`` columns) plus Gaussian noise.

    Args:
        blocks: Number of blocks (classes)
        nodes_per_block: Nodes per block
        p_intra: Edge probability inside a block
        p_inter: Edge probability between blocks
        feat_dim: Feature width, at least ``blocks``
        feat_noise: Standard deviation of the feature noise
        seed: Random seed

    Returns:
        Graph with labels = block ids and empty masks
    """
    for name, p in (("p_intra", p_intra), ("p_inter", p_inter)):
        if not 0.0 <= p <= 1.0:
            raise ConfigurationError(f"{name} must be in [0, 1], got {p}")
    if feat_dim < blocks:
        raise ConfigurationError(f"feat_dim ({feat_dim}) must be at least blocks ({blocks})")
    if feat_noise < 0:
        raise ConfigurationError(f"feat_noise must be >= 0, got {feat_noise}")

    sizes = [nodes_per_block] * blocks
    probs = [[p_intra if i == j else p_inter for j in range(blocks)] for i in range(blocks)]
    sbm = nx.stochastic_block_model(sizes, probs, seed=seed, sparse=True)
    num_nodes = blocks * nodes_per_block
    edges, _ = canonical_edges(list(sbm.edges()), num_nodes)

    labels = np.repeat(np.arange(blocks, dtype=np.int64), nodes_per_block)
    rng = np.random.default_rng(seed)
    features = np.zeros((num_nodes, feat_dim), dtype=np.float64)
    features[np.arange(num_nodes), labels] = 1.0
    if feat_noise > 0:
        features += rng.normal(0.0, feat_noise, size=features.shape)

    logger.info(
        "Generated SBM graph",
        blocks=blocks,
        nodes=num_nodes,
        edges=len(edges),
        p_intra=p_intra,
        p_inter=p_inter,
        seed=seed,
    )
    return Graph(num_nodes=num_nodes, edges=edges, features=features, labels=labels)
