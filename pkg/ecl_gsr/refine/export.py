"""Refined adjacency export."""

from pathlib import Path

import structlog

from ecl_gsr.core.exceptions import ExportError
from ecl_gsr.graph.model import Graph

logger = structlog.get_logger(__name__)


def export_refined_edges(refined, path):
    """
    Write nonzero refined edges as TSV.

    Hard adjacencies use ``src<TAB>dst``; relaxed ones add a weight column.
    """
    pairs, weights = refined.weighted_edges()
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for (src, dst), w in zip(pairs, weights):
                if refined.mode == "relaxed":
                    f.write(f"{src}\t{dst}\t{float(w)!r}\n")
                else:
                    f.write(f"{src}\t{dst}\n")
    except OSError as e:
        raise ExportError(f"Could not write refined edges to {path}: {e}") from e
    logger.info("Exported refined edges", path=str(path), edges=len(pairs), mode=refined.mode)
    return path


def refined_graph(refined, graph):
    """Copy of ``graph`` whose edges are the nonzero entries of ``refined``."""
    pairs, _ = refined.weighted_edges()
    return Graph(
        num_nodes=graph.num_nodes,
        edges=pairs,
        features=graph.features,
        labels=graph.labels,
        train_mask=graph.train_mask,
        val_mask=graph.val_mask,
        test_mask=graph.test_mask,
    )
