"""Dual-attribute graph: raw features joined with structural embeddings."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import structlog

from ecl_gsr.core.exceptions import GraphValidationError
from ecl_gsr.embedding.skipgram import SkipGramTrainer
from ecl_gsr.embedding.walks import random_walks
from ecl_gsr.graph.io import STRUCTURAL_FILE, load_matrix_csv, save_matrix_csv

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class DualAttributeGraph:
    """Graph whose node attributes are ``[features, structural]``."""

    x_dual: np.ndarray
    graph: object

    @property
    def num_nodes(self):
        return self.graph.num_nodes

    @property
    def edges(self):
        return self.graph.edges

    @property
    def contextual_dim(self):
        return self.graph.num_features

    @property
    def contextual(self):
        return self.x_dual[:, : self.contextual_dim]

    @property
    def structural(self):
        return self.x_dual[:, self.contextual_dim :]


def build_dual(graph, x_s):
    """
    Concatenate raw features and structural embeddings column-wise.

    Neither block is normalized.

    Args:
        graph: Source Graph
        x_s: (V, D_s) structural embedding matrix

    Returns:
        DualAttributeGraph
    """
    x_s = np.asarray(x_s, dtype=np.float64)
    if x_s.ndim != 2 or x_s.shape[0] != graph.num_nodes:
        raise GraphValidationError(
            f"Structural embedding shape {x_s.shape} does not match {graph.num_nodes} nodes"
        )
    x_dual = np.concatenate([graph.features, x_s], axis=1)
    x_dual.setflags(write=False)
    return DualAttributeGraph(x_dual=x_dual, graph=graph)


def structural_embeddings(graph, config, dim=None, seed=None):
    """Run DeepWalk with the walk and skip-gram settings of ``config``.

    ``dim`` defaults to the raw feature width.
    """
    seed = config.seed if seed is None else seed
    dim = graph.num_features if dim is None else dim
    corpus = random_walks(graph, config.walk_length, config.walks_per_node, seed)
    trainer = SkipGramTrainer(
        dim=dim,
        window=config.window,
        negatives_per_positive=config.negatives,
        epochs=config.deepwalk_epochs,
        lr=config.deepwalk_lr,
    )
    x_s = trainer.fit(corpus, seed)
    logger.info(
        "Trained structural embeddings",
        nodes=graph.num_nodes,
        dim=dim,
        final_loss=trainer.epoch_losses[-1] if trainer.epoch_losses else None,
    )
    return x_s


def cached_structural_embeddings(graph, config, cache_dir=None):
    """Load ``x_s.csv`` from ``cache_dir`` if it fits the graph, else train and write it."""
    cache = Path(cache_dir) / STRUCTURAL_FILE if cache_dir is not None else None
    if cache is not None and cache.is_file():
        x_s = load_matrix_csv(cache)
        if x_s.shape == (graph.num_nodes, graph.num_features):
            logger.info("Using cached structural embeddings", path=str(cache))
            return x_s
        logger.warning("Ignoring stale structural cache", path=str(cache), shape=x_s.shape)

    x_s = structural_embeddings(graph, config)
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        save_matrix_csv(x_s, cache)
    return x_s
