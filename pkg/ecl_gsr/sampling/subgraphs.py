"""Edge-set subgraph mini-batches."""

from dataclasses import dataclass

import numpy as np
import structlog

from ecl_gsr.core.exceptions import SamplingError
from ecl_gsr.graph.adjacency import normalize_pairs

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Subgraph:
    """Induced subgraph over the endpoints of a handful of sampled edges.

    ``node_ids`` are sorted global indices; ``local_adj`` and ``x_local`` are
    indexed by position in ``node_ids``.
    """

    node_ids: np.ndarray
    local_adj: object
    x_local: np.ndarray

    @property
    def num_nodes(self):
        return len(self.node_ids)


def induced_edges(edges, node_ids):
    """Edges of ``edges`` with both endpoints in ``node_ids``, relabelled locally."""
    node_ids = np.asarray(node_ids, dtype=np.int64)
    if len(edges) == 0:
        return np.empty((0, 2), dtype=np.int64)
    inside = np.isin(edges[:, 0], node_ids) & np.isin(edges[:, 1], node_ids)
    kept = edges[inside]
    return np.searchsorted(node_ids, kept).reshape(-1, 2)


def subgraph_from_nodes(dual, node_ids):
    node_ids = np.unique(np.asarray(node_ids, dtype=np.int64))
    local = induced_edges(dual.edges, node_ids)
    return Subgraph(
        node_ids=node_ids,
        local_adj=normalize_pairs(len(node_ids), local),
        x_local=dual.x_dual[node_ids],
    )


def sample_subgraphs(dual, batch_n, edges_per_subgraph, seed):
    """
    Draw ``batch_n`` subgraphs, each spanned by ``edges_per_subgraph`` edges.

    Edges are drawn uniformly with replacement. Subgraph ``n`` uses its own
    generator seeded by ``(seed, n)`` so batches can be built in any order.

    Args:
        dual: DualAttributeGraph
        batch_n: Number of subgraphs N (at least 2)
        edges_per_subgraph: Edges m per subgraph
        seed: Random seed

    Returns:
        List of Subgraph
    """
    edges = dual.edges
    if len(edges) == 0:
        raise SamplingError("Cannot sample subgraphs from a graph without edges")
    if batch_n < 2:
        raise SamplingError(f"Batch needs at least 2 subgraphs, got {batch_n}")
    if edges_per_subgraph < 1:
        raise SamplingError(f"edges_per_subgraph must be positive, got {edges_per_subgraph}")

    subgraphs = []
    for n in range(batch_n):
        rng = np.random.default_rng([seed, n])
        picked = edges[rng.integers(0, len(edges), size=edges_per_subgraph)]
        subgraphs.append(subgraph_from_nodes(dual, picked.ravel()))
    return subgraphs
