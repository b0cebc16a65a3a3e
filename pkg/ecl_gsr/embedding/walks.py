"""Uniform random walks (DeepWalk corpus)."""

from dataclasses import dataclass

import numpy as np
import structlog

logger = structlog.get_logger(__name__)

PAD = -1


@dataclass(frozen=True, eq=False)
class WalkCorpus:
    """Random walks stored as a PAD-filled (num_walks, walk_length) matrix.

    Row ``r`` is rooted at ``paths[r, 0]``; a walk from an isolated node stops
    after its root.
    """

    paths: np.ndarray
    num_nodes: int
    walk_length: int
    walks_per_node: int
    degrees: np.ndarray

    @property
    def walks(self):
        return [row[row != PAD] for row in self.paths]

    def __len__(self):
        return len(self.paths)


def random_walks(graph, walk_length, walks_per_node, seed):
    """
    Generate ``walks_per_node`` uniform random walks from every node.

    All walkers advance in lock-step, so one seed fixes the whole corpus.

    Args:
        graph: Graph with V >= 1
        walk_length: Nodes per walk, root included
        walks_per_node: Walks rooted at each node
        seed: Random seed

    Returns:
        WalkCorpus
    """
    rng = np.random.default_rng(seed)
    csr = graph.adjacency_matrix()
    indptr, indices = csr.indptr, csr.indices
    degree = np.diff(indptr)

    roots = np.tile(np.arange(graph.num_nodes, dtype=np.int64), walks_per_node)
    paths = np.full((len(roots), walk_length), PAD, dtype=np.int64)
    paths[:, 0] = roots
    current = roots.copy()
    alive = np.ones(len(roots), dtype=bool)

    for step in range(1, walk_length):
        alive &= degree[current] > 0
        if not alive.any():
            break
        walkers = np.flatnonzero(alive)
        here = current[walkers]
        offset = np.floor(rng.random(len(walkers)) * degree[here]).astype(np.int64)
        nxt = indices[indptr[here] + offset]
        current[walkers] = nxt
        paths[walkers, step] = nxt

    logger.debug(
        "Generated random walks",
        walks=len(paths),
        walk_length=walk_length,
        truncated=int((paths[:, -1] == PAD).sum()),
    )
    return WalkCorpus(
        paths=paths,
        num_nodes=graph.num_nodes,
        walk_length=walk_length,
        walks_per_node=walks_per_node,
        degrees=degree.astype(np.float64),
    )
