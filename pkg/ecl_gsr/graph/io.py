"""Reading and writing graph datasets.

A dataset directory holds four UTF-8 files:

    edges.tsv      "src<TAB>dst" per line, 0-indexed
    features.csv   one comma-separated row of floats per node
    labels.tsv     "node<TAB>label" per labeled node
    split.json     {"train": [...], "val": [...], "test": [...]}
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import structlog

from ecl_gsr.core.exceptions import GraphFormatError, GraphValidationError
from ecl_gsr.graph.model import UNLABELED, Graph, canonical_edges

logger = structlog.get_logger(__name__)

EDGES_FILE = "edges.tsv"
FEATURES_FILE = "features.csv"
LABELS_FILE = "labels.tsv"
SPLIT_FILE = "split.json"
STRUCTURAL_FILE = "x_s.csv"


@dataclass(frozen=True)
class LoadReport:
    """Counters collected while ingesting a dataset."""

    self_loops_dropped: int = 0
    duplicate_edges_merged: int = 0


def _require(path):
    if not path.is_file():
        raise GraphFormatError("missing file", file=path)
    return path


def _lines(path):
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if line.strip():
                yield lineno, line


def _parse_int(token, path, lineno):
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"non-numeric token {token!r}", file=path, line=lineno) from None


def _parse_float(token, path, lineno):
    try:
        value = float(token)
    except ValueError:
        raise GraphFormatError(f"non-numeric token {token!r}", file=path, line=lineno) from None
    if not np.isfinite(value):
        raise GraphFormatError(f"non-finite value {token!r}", file=path, line=lineno)
    return value


def load_matrix_csv(path):
    """Read a dense CSV matrix, rejecting ragged rows and non-numeric tokens."""
    path = _require(Path(path))
    rows = []
    width = None
    for lineno, line in _lines(path):
        row = [_parse_float(tok.strip(), path, lineno) for tok in line.split(",")]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise GraphFormatError(
                f"ragged row: expected {width} values, got {len(row)}", file=path, line=lineno
            )
        rows.append(row)
    if not rows:
        raise GraphFormatError("no rows", file=path)
    return np.array(rows, dtype=np.float64)


def save_matrix_csv(matrix, path):
    """Write a matrix with exact (round-trip) decimal rendering."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in np.asarray(matrix, dtype=np.float64):
            f.write(",".join(repr(float(x)) for x in row))
            f.write("\n")


def _read_edges(path, num_nodes):
    pairs = []
    for lineno, line in _lines(path):
        parts = line.split("\t")
        if len(parts) < 2:
            raise GraphFormatError("expected 'src<TAB>dst'", file=path, line=lineno)
        src = _parse_int(parts[0].strip(), path, lineno)
        dst = _parse_int(parts[1].strip(), path, lineno)
        for node in (src, dst):
            if not 0 <= node < num_nodes:
                raise GraphFormatError(
                    f"node index {node} out of range [0, {num_nodes})", file=path, line=lineno
                )
        pairs.append((src, dst))
    return pairs


def _read_labels(path, num_nodes):
    labels = np.full(num_nodes, UNLABELED, dtype=np.int64)
    for lineno, line in _lines(path):
        parts = line.split("\t")
        if len(parts) < 2:
            raise GraphFormatError("expected 'node<TAB>label'", file=path, line=lineno)
        node = _parse_int(parts[0].strip(), path, lineno)
        label = _parse_int(parts[1].strip(), path, lineno)
        if not 0 <= node < num_nodes:
            raise GraphFormatError(
                f"node index {node} out of range [0, {num_nodes})", file=path, line=lineno
            )
        if label < 0:
            raise GraphFormatError(f"negative label {label}", file=path, line=lineno)
        labels[node] = label
    return labels


def _read_split(path, num_nodes):
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON: {e.msg}", file=path, line=e.lineno) from None
    masks = []
    for key in ("train", "val", "test"):
        ids = data.get(key, []) if isinstance(data, dict) else None
        if not isinstance(ids, list) or not all(isinstance(i, int) for i in ids):
            raise GraphFormatError(f"'{key}' must be a list of node ids", file=path)
        if any(not 0 <= i < num_nodes for i in ids):
            raise GraphFormatError(f"'{key}' contains an out-of-range node id", file=path)
        masks.append(np.array(ids, dtype=np.int64))
    return masks


def read_dataset(dir_path):
    """
    Load and validate a dataset directory.

    Reversed and repeated edges are merged; self-loops are dropped and counted.

    Args:
        dir_path: Directory containing the four dataset files

    Returns:
        Tuple of (Graph, LoadReport)
    """
    root = Path(dir_path)
    features_path = _require(root / FEATURES_FILE)
    edges_path = _require(root / EDGES_FILE)
    labels_path = _require(root / LABELS_FILE)
    split_path = _require(root / SPLIT_FILE)

    features = load_matrix_csv(features_path)
    num_nodes = features.shape[0]
    pairs = _read_edges(edges_path, num_nodes)
    edges, self_loops = canonical_edges(pairs, num_nodes)
    merged = len(pairs) - self_loops - len(edges)
    if self_loops:
        logger.warning("Dropped self-loops", path=str(edges_path), count=self_loops)
    labels = _read_labels(labels_path, num_nodes)
    train, val, test = _read_split(split_path, num_nodes)

    try:
        graph = Graph(
            num_nodes=num_nodes,
            edges=edges,
            features=features,
            labels=labels,
            train_mask=train,
            val_mask=val,
            test_mask=test,
        )
    except GraphValidationError as e:
        raise GraphFormatError(str(e), file=split_path) from e

    logger.info(
        "Loaded graph",
        path=str(root),
        nodes=graph.num_nodes,
        edges=graph.num_edges,
        features=graph.num_features,
        classes=graph.num_classes,
        self_loops_dropped=self_loops,
    )
    return graph, LoadReport(self_loops_dropped=self_loops, duplicate_edges_merged=merged)


def load_graph(dir_path):
    """Load a dataset directory into a validated Graph."""
    graph, _ = read_dataset(dir_path)
    return graph


def save_graph(graph, dir_path):
    """Write a Graph in the dataset directory format."""
    root = Path(dir_path)
    root.mkdir(parents=True, exist_ok=True)

    with open(root / EDGES_FILE, "w", encoding="utf-8", newline="\n") as f:
        for src, dst in graph.edges:
            f.write(f"{src}\t{dst}\n")

    save_matrix_csv(graph.features, root / FEATURES_FILE)

    with open(root / LABELS_FILE, "w", encoding="utf-8", newline="\n") as f:
        for node in graph.labeled_nodes:
            f.write(f"{node}\t{graph.labels[node]}\n")

    split = {
        "train": [int(i) for i in graph.train_mask],
        "val": [int(i) for i in graph.val_mask],
        "test": [int(i) for i in graph.test_mask],
    }
    (root / SPLIT_FILE).write_text(json.dumps(split) + "\n", encoding="utf-8")

    logger.info("Saved graph", path=str(root), nodes=graph.num_nodes, edges=graph.num_edges)
    return root
