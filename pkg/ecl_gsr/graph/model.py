"""Graph data model."""

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from ecl_gsr.core.exceptions import GraphValidationError

UNLABELED = -1


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def canonical_edges(pairs, num_nodes):
    """
    Canonicalize an undirected edge list.

    Orients every pair as (min, max), drops self-loops and duplicates and sorts
    lexicographically.

    Args:
        pairs: Array-like of shape (E, 2)
        num_nodes: Node count used for range checks

    Returns:
        Tuple of (edges array of shape (E', 2), number of self-loops dropped)
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if pairs.size and (pairs.min() < 0 or pairs.max() >= num_nodes):
        raise GraphValidationError(f"Edge index out of range for {num_nodes} nodes")
    loops = pairs[:, 0] == pairs[:, 1]
    pairs = np.sort(pairs[~loops], axis=1)
    if len(pairs):
        pairs = np.unique(pairs, axis=0)
    return pairs.reshape(-1, 2), int(loops.sum())


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected attributed graph with node labels and split masks.

    Edges are stored once with ``src < dst``. ``labels`` uses ``UNLABELED``
    for nodes without a class. Masks are sorted node-index arrays.
    """

    num_nodes: int
    edges: np.ndarray
    features: np.ndarray
    labels: np.ndarray
    train_mask: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    val_mask: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    test_mask: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))

    def __post_init__(self):
        object.__setattr__(self, "edges", _frozen(self.edges, np.int64).reshape(-1, 2))
        object.__setattr__(self, "features", _frozen(self.features, np.float64))
        object.__setattr__(self, "labels", _frozen(self.labels, np.int64))
        for name in ("train_mask", "val_mask", "test_mask"):
            object.__setattr__(self, name, _frozen(np.sort(getattr(self, name)), np.int64))
        self._validate()

    def _validate(self):
        v = self.num_nodes
        if v < 1:
            raise GraphValidationError("Graph needs at least one node")
        if self.features.ndim != 2 or self.features.shape[0] != v:
            raise GraphValidationError(
                f"Feature matrix shape {self.features.shape} does not match {v} nodes"
            )
        if self.labels.shape != (v,):
            raise GraphValidationError(f"Expected {v} labels, got {self.labels.shape}")
        if (self.labels < UNLABELED).any():
            raise GraphValidationError("Labels must be class indices or UNLABELED")

        e = self.edges
        if len(e):
            if e.min() < 0 or e.max() >= v:
                raise GraphValidationError("Edge index out of range")
            if (e[:, 0] >= e[:, 1]).any():
                raise GraphValidationError("Edges must satisfy src < dst (no self-loops)")
            keys = e[:, 0] * v + e[:, 1]
            if len(np.unique(keys)) != len(keys):
                raise GraphValidationError("Duplicate edges")

        masks = [self.train_mask, self.val_mask, self.test_mask]
        seen = np.concatenate(masks)
        if len(seen):
            if seen.min() < 0 or seen.max() >= v:
                raise GraphValidationError("Mask index out of range")
            if len(np.unique(seen)) != len(seen):
                raise GraphValidationError("Masks must be pairwise disjoint")
            if (self.labels[seen] == UNLABELED).any():
                raise GraphValidationError("Every masked node needs a label")

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_features(self):
        return self.features.shape[1]

    @property
    def num_classes(self):
        labeled = self.labels[self.labels != UNLABELED]
        return int(labeled.max()) + 1 if len(labeled) else 0

    @property
    def labeled_nodes(self):
        return np.flatnonzero(self.labels != UNLABELED)

    def with_edges(self, edges):
        return replace(self, edges=edges)

    def with_masks(self, train, val, test):
        return replace(self, train_mask=train, val_mask=val, test_mask=test)

    def adjacency_matrix(self):
        """Symmetric unweighted adjacency as a scipy CSR matrix."""
        v = self.num_nodes
        rows = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        cols = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        data = np.ones(len(rows), dtype=np.float64)
        return sp.csr_matrix((data, (rows, cols)), shape=(v, v))

    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.num_nodes)
