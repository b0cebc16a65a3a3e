"""Edge probabilities from node representations."""

from dataclasses import dataclass

import numpy as np
import structlog
from sklearn.neighbors import NearestNeighbors

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.tape import Value, as_value
from ecl_gsr.config.settings import settings
from ecl_gsr.core.exceptions import MemoryGuardError, ShapeError
from ecl_gsr.graph.adjacency import normalize_adjacency
from ecl_gsr.graph.model import canonical_edges
from ecl_gsr.model.encoder import encode

logger = structlog.get_logger(__name__)

DENSE = "dense"


@dataclass(frozen=True, eq=False)
class EdgeProbMatrix:
    """Edge probabilities, either a full (V, V) matrix or one entry per candidate pair.

    In pair mode ``pairs`` holds (i, j) with i < j and ``probs`` is a vector.
    The dense matrix has a zero diagonal.
    """

    probs: object
    num_nodes: int
    pairs: np.ndarray = None

    @property
    def is_dense(self):
        return self.pairs is None

    @property
    def values(self):
        return self.probs.data


def full_node_embeddings(params, dual, max_nodes=None):
    """Encoder output for every node of the dual-attribute graph."""
    limit = settings.max_full_graph_nodes if max_nodes is None else max_nodes
    if dual.num_nodes > limit:
        raise MemoryGuardError(
            f"Refusing full-graph encoding of {dual.num_nodes} nodes (limit {limit})"
        )
    return encode(params, normalize_adjacency(dual.graph), dual.x_dual)


def center_rows(z):
    """
    Subtract the mean row from every node representation.

    The last encoder layer is linear over non-negative ReLU activations, so
    raw rows share one dominant direction and every pairwise cosine is
    positive. Centered rows sum to zero, so at least one pair always has a
    negative cosine and the sign of the cosine reflects how two nodes differ
    from the graph average.

    Args:
        z: (V, F) node representations (Value or array)

    Returns:
        Value of shape (V, F)
    """
    z = as_value(z)
    return ops.sub(z, ops.mean(z, axis=0, keepdims=True))


def refinement_embeddings(params, dual, center=True, max_nodes=None):
    """Full-graph encoder output, centered when ``center`` is set."""
    z = full_node_embeddings(params, dual, max_nodes=max_nodes)
    return center_rows(z) if center else z


def _prob_from_cosine(cos):
    return ops.scale(ops.add(ops.clip(cos, -1.0, 1.0), 1.0), 0.5)


def edge_probabilities(z, candidates=DENSE):
    """
    Map cosine similarity of node representations to [0, 1] as (cos + 1) / 2.

    Args:
        z: (V, F) node representations (Value or array)
        candidates: ``"dense"`` for all pairs, or an (P, 2) array with i < j

    Returns:
        EdgeProbMatrix
    """
    z = as_value(z)
    v = z.shape[0]
    if z.ndim != 2 or v < 2:
        raise ShapeError(f"Edge probabilities need at least 2 node rows, got shape {z.shape}")

    if isinstance(candidates, str):
        off_diagonal = 1.0 - np.eye(v)
        probs = ops.mul(_prob_from_cosine(ops.cosine_matrix(z)), off_diagonal)
        return EdgeProbMatrix(probs=probs, num_nodes=v)

    pairs = np.asarray(candidates, dtype=np.int64).reshape(-1, 2)
    cos = ops.row_cosine(ops.gather_rows(z, pairs[:, 0]), ops.gather_rows(z, pairs[:, 1]))
    return EdgeProbMatrix(probs=_prob_from_cosine(cos), num_nodes=v, pairs=pairs)


def cosine_neighbors(z, k):
    """Top-``k`` cosine neighbours of every row by exhaustive scan, self excluded."""
    z = np.asarray(z, dtype=np.float64)
    v = z.shape[0]
    k = min(k, v - 1)
    if k <= 0:
        return np.empty((0, 2), dtype=np.int64)
    search = NearestNeighbors(n_neighbors=k + 1, metric="cosine", algorithm="brute")
    search.fit(z)
    _, neighbors = search.kneighbors(z)

    pairs = []
    for i, row in enumerate(neighbors):
        others = [j for j in row if j != i][:k]
        pairs.extend((i, j) for j in others)
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def build_candidates(z, graph, k=None, dense_limit=None):
    """
    Choose the pair set for edge prediction.

    Small graphs use every pair. Larger ones use the existing edges plus each
    node's ``k`` nearest neighbours by cosine similarity.

    Returns:
        ``"dense"`` or an (P, 2) canonical pair array
    """
    k = settings.candidate_k if k is None else k
    limit = settings.dense_node_limit if dense_limit is None else dense_limit
    if k < 0:
        raise ShapeError(f"k must be non-negative, got {k}")
    if graph.num_nodes <= limit:
        return DENSE

    if isinstance(z, Value):
        z = z.data
    knn = cosine_neighbors(z, k)
    pairs, _ = canonical_edges(np.concatenate([graph.edges, knn]), graph.num_nodes)
    logger.info(
        "Built candidate pairs", nodes=graph.num_nodes, k=k, edges=graph.num_edges, pairs=len(pairs)
    )
    return pairs
