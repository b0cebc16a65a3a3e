"""Symmetric GCN propagation operator."""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True, eq=False)
class NormalizedAdjacency:
    """D^{-1/2}(A+I)D^{-1/2} in coordinate form, self-loops included.

    ``rows``/``cols``/``weights`` list every stored entry of the symmetric
    matrix, both orientations of each edge plus one diagonal entry per node.
    """

    num_nodes: int
    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray

    def to_sparse(self):
        n = self.num_nodes
        return sp.csr_matrix((self.weights, (self.rows, self.cols)), shape=(n, n))

    def to_dense(self):
        dense = np.zeros((self.num_nodes, self.num_nodes), dtype=np.float64)
        np.add.at(dense, (self.rows, self.cols), self.weights)
        return dense


def normalize_pairs(num_nodes, edges, edge_weights=None):
    """
    Build the self-loop symmetric normalization of a weighted edge list.

    Args:
        num_nodes: Node count V
        edges: (E, 2) array of undirected pairs without self-loops
        edge_weights: Optional (E,) weights, 1.0 when omitted

    Returns:
        NormalizedAdjacency
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if edge_weights is None:
        edge_weights = np.ones(len(edges), dtype=np.float64)
    edge_weights = np.asarray(edge_weights, dtype=np.float64).ravel()

    src, dst = edges[:, 0], edges[:, 1]
    degree = np.ones(num_nodes, dtype=np.float64)
    degree += np.bincount(src, weights=edge_weights, minlength=num_nodes)
    degree += np.bincount(dst, weights=edge_weights, minlength=num_nodes)
    inv_sqrt = 1.0 / np.sqrt(degree)

    loops = np.arange(num_nodes, dtype=np.int64)
    rows = np.concatenate([src, dst, loops])
    cols = np.concatenate([dst, src, loops])
    off = edge_weights * inv_sqrt[src] * inv_sqrt[dst]
    weights = np.concatenate([off, off, 1.0 / degree])
    return NormalizedAdjacency(num_nodes=num_nodes, rows=rows, cols=cols, weights=weights)


def normalize_adjacency(graph):
    """Self-loop symmetric normalization of a Graph's adjacency."""
    return normalize_pairs(graph.num_nodes, graph.edges)
