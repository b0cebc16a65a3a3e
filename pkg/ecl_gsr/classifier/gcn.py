"""Three-layer GCN node classifier over a refined adjacency."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import structlog

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.params import ParamStore, glorot
from ecl_gsr.autodiff.tape import Value, as_value
from ecl_gsr.core.exceptions import ExportError, ShapeError

logger = structlog.get_logger(__name__)

LOG_FLOOR = 1e-12


@dataclass
class ClassifierParams:
    store: ParamStore
    input_dim: int
    width: int
    num_classes: int

    @classmethod
    def init(cls, input_dim, num_classes, width=64, seed=0):
        rng = np.random.default_rng(seed)
        store = ParamStore()
        store.create("classifier.w1", glorot(rng, input_dim, width))
        store.create("classifier.w2", glorot(rng, width, width))
        store.create("classifier.w3", glorot(rng, width, num_classes))
        return cls(store=store, input_dim=input_dim, width=width, num_classes=num_classes)

    @property
    def weights(self):
        return [self.store[f"classifier.w{i}"] for i in (1, 2, 3)]


def _dense_operator(values, v):
    with_loops = ops.add(values, np.eye(v))
    inv_sqrt = ops.power(ops.sum_(with_loops, axis=1), -0.5)
    normalized = ops.mul(
        ops.mul(with_loops, ops.reshape(inv_sqrt, (v, 1))), ops.reshape(inv_sqrt, (1, v))
    )
    return lambda h: ops.matmul(normalized, h)


def _sparse_operator(values, pairs, v):
    src, dst = pairs[:, 0], pairs[:, 1]
    degree = ops.add(
        ops.add(ops.scatter_add(values, src, v), ops.scatter_add(values, dst, v)), 1.0
    )
    inv_sqrt = ops.power(degree, -0.5)
    off = ops.mul(ops.mul(values, ops.index(inv_sqrt, src)), ops.index(inv_sqrt, dst))
    loops = ops.power(degree, -1.0)
    weights = ops.reshape(
        ops.concat_rows(
            [ops.reshape(off, (-1, 1)), ops.reshape(off, (-1, 1)), ops.reshape(loops, (-1, 1))]
        ),
        (-1,),
    )
    nodes = np.arange(v, dtype=np.int64)
    rows = np.concatenate([src, dst, nodes])
    cols = np.concatenate([dst, src, nodes])
    return lambda h: ops.spmm(rows, cols, weights, h, v)


def propagation_operator(refined):
    """Self-loop symmetric normalization of a refined adjacency, as a callable on (V, F)."""
    values = as_value(refined.values)
    if refined.is_dense:
        return _dense_operator(values, refined.num_nodes)
    return _sparse_operator(values, refined.pairs, refined.num_nodes)


def classify(params, refined, x):
    """
    Class logits and probabilities of every node.

    Args:
        params: ClassifierParams
        refined: RefinedAdjacency over V nodes
        x: (V, D) raw feature matrix

    Returns:
        Tuple of (H, probs), both Values of shape (V, C)
    """
    x = as_value(x)
    if x.ndim != 2 or x.shape[0] != refined.num_nodes or x.shape[1] != params.input_dim:
        raise ShapeError(
            f"Classifier expects ({refined.num_nodes}, {params.input_dim}) features, got {x.shape}"
        )
    propagate = propagation_operator(refined)
    h = x
    weights = params.weights
    for layer, w in enumerate(weights):
        h = propagate(ops.matmul(h, w))
        if layer < len(weights) - 1:
            h = ops.relu(h)
    return h, ops.softmax_rows(h)


def _check_mask(mask):
    mask = np.asarray(mask, dtype=np.int64)
    if mask.size == 0:
        raise ShapeError("Mask is empty")
    return mask


def ce_loss(probs, labels, mask):
    """Mean of -log p[node, label] over masked nodes, log floored at 1e-12."""
    mask = _check_mask(mask)
    labels = np.asarray(labels, dtype=np.int64)
    picked = ops.take(probs, mask, labels[mask])
    return ops.neg(ops.mean(ops.log(ops.clip(picked, LOG_FLOOR, 1.0))))


def predict(probs):
    """Argmax class per row; ties go to the lowest class index."""
    data = probs.data if isinstance(probs, Value) else np.asarray(probs)
    return np.argmax(data, axis=1)


def accuracy(probs, labels, mask):
    mask = _check_mask(mask)
    labels = np.asarray(labels, dtype=np.int64)
    return float(np.mean(predict(probs)[mask] == labels[mask]))


def export_predictions(probs, path):
    """Write ``node<TAB>predicted_label<TAB>max_prob`` for every node."""
    data = probs.data if isinstance(probs, Value) else np.asarray(probs)
    predicted = predict(data)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for node, (label, row) in enumerate(zip(predicted, data)):
                f.write(f"{node}\t{label}\t{float(row[label])!r}\n")
    except OSError as e:
        raise ExportError(f"Could not write predictions to {path}: {e}") from e
    logger.info("Exported predictions", path=str(path), nodes=len(predicted))
    return path
