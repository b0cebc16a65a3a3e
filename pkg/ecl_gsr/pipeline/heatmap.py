"""Class-grouped adjacency heatmaps."""

from pathlib import Path

import numpy as np
import structlog

from ecl_gsr.core.exceptions import ExportError
from ecl_gsr.graph.io import save_matrix_csv
from ecl_gsr.graph.model import UNLABELED

logger = structlog.get_logger(__name__)


def class_grouped_order(labels):
    """Node indices sorted by class, unlabeled nodes last, ties by index."""
    labels = np.asarray(labels, dtype=np.int64)
    key = np.where(labels == UNLABELED, labels.max(initial=0) + 1, labels)
    return np.argsort(key, kind="stable")


def block_densities(matrix, labels):
    """
    Mean weight of intra-class and of inter-class off-diagonal entries.

    Only entries between two labeled nodes count.

    Returns:
        Tuple of (intra, inter); NaN where no entry qualifies
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    labels = np.asarray(labels)
    labeled = labels != UNLABELED
    both = labeled[:, None] & labeled[None, :]
    np.fill_diagonal(both, False)
    same = labels[:, None] == labels[None, :]
    intra, inter = both & same, both & ~same
    return (
        float(matrix[intra].mean()) if intra.any() else float("nan"),
        float(matrix[inter].mean()) if inter.any() else float("nan"),
    )


def write_pgm(matrix, path):
    """8-bit binary PGM; each pixel is floor(255 * weight), weights clipped to [0, 1]."""
    pixels = np.floor(255.0 * np.clip(matrix, 0.0, 1.0)).astype(np.uint8)
    height, width = pixels.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        f.write(pixels.tobytes())
    return path


def emit_heatmap(matrix, node_order, path):
    """
    Reorder a square matrix by ``node_order`` and write it as PGM and CSV.

    Args:
        matrix: (V, V) weights in [0, 1]
        node_order: Permutation of range(V), typically class-grouped
        path: Output path; ``.pgm`` and ``.csv`` siblings are written

    Returns:
        Tuple of (pgm path, csv path)
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ExportError(f"Heatmap needs a square matrix, got shape {matrix.shape}")
    v = matrix.shape[0]
    order = np.asarray(node_order)
    if (
        order.ndim != 1
        or len(order) != v
        or not np.issubdtype(order.dtype, np.integer)
        or not np.array_equal(np.sort(order), np.arange(v))
    ):
        raise ExportError(f"node_order must be a permutation of 0..{v - 1}")

    reordered = matrix[np.ix_(order, order)]
    base = Path(path)
    pgm_path, csv_path = base.with_suffix(".pgm"), base.with_suffix(".csv")
    try:
        base.parent.mkdir(parents=True, exist_ok=True)
        write_pgm(reordered, pgm_path)
        save_matrix_csv(reordered, csv_path)
    except OSError as e:
        raise ExportError(f"Could not write heatmap {base}: {e}") from e
    logger.info("Wrote heatmap", pgm=str(pgm_path), csv=str(csv_path), nodes=v)
    return pgm_path, csv_path
