"""Dataset preparation for a training run."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import structlog

from ecl_gsr.embedding.dual import DualAttributeGraph, build_dual, cached_structural_embeddings
from ecl_gsr.graph.generators import sbm_generate
from ecl_gsr.graph.io import load_graph
from ecl_gsr.graph.model import Graph
from ecl_gsr.graph.perturb import perturb_edges
from ecl_gsr.graph.splits import SplitSpec, make_split

logger = structlog.get_logger(__name__)

# Train ratio used when a graph comes without a split and none is configured.
DEFAULT_TRAIN_RATIO = 0.1


@dataclass(frozen=True, eq=False)
class PreparedData:
    """Training graph, its dual-attribute form and, for SBM runs, the uncorrupted graph."""

    graph: Graph
    dual: DualAttributeGraph
    clean: Optional[Graph] = None


def resolve_split(graph, config):
    """Apply the configured ratio split, or a default one when the graph has none."""
    ratio = config.train_ratio
    if ratio is None and len(graph.train_mask):
        return graph
    spec = SplitSpec.from_ratio(
        ratio or DEFAULT_TRAIN_RATIO,
        val_fraction=config.val_fraction,
        test_fraction=config.test_fraction,
        seed=config.seed,
    )
    return make_split(graph, spec)


def sbm_graphs(config):
    """Clean SBM graph and its copy with ``sbm_add_ratio`` random edges added."""
    clean = sbm_generate(
        blocks=config.sbm_blocks,
        nodes_per_block=config.sbm_per_block,
        p_intra=config.sbm_p_intra,
        p_inter=config.sbm_p_inter,
        feat_dim=config.sbm_feat_dim,
        feat_noise=config.sbm_feat_noise,
        seed=config.seed,
    )
    clean = resolve_split(clean, config)
    if config.sbm_add_ratio > 0:
        return clean, perturb_edges(clean, config.sbm_add_ratio, 0.0, seed=config.seed)
    return clean, clean


def dual_graph(graph, config, cache_dir=None):
    """Dual-attribute graph; raw attributes only when ``use_structural`` is off."""
    if not config.use_structural:
        return build_dual(graph, np.zeros((graph.num_nodes, 0)))
    return build_dual(graph, cached_structural_embeddings(graph, config, cache_dir))


def prepare_data(config, graph=None):
    """
    Build everything a training run needs.

    Args:
        config: TrainConfig
        graph: Use this graph instead of the configured source; structural
            embeddings are then always recomputed

    Returns:
        PreparedData
    """
    clean, cache_dir = None, None
    if graph is None:
        if config.dataset is not None:
            graph = resolve_split(load_graph(config.dataset), config)
            cache_dir = config.dataset
        else:
            clean, graph = sbm_graphs(config)
    else:
        graph = resolve_split(graph, config)

    logger.info(
        "Prepared data",
        source=str(config.dataset) if config.dataset else "sbm",
        nodes=graph.num_nodes,
        edges=graph.num_edges,
        train=len(graph.train_mask),
        val=len(graph.val_mask),
        test=len(graph.test_mask),
    )
    return PreparedData(graph=graph, dual=dual_graph(graph, config, cache_dir), clean=clean)
