"""Train/validation/test split construction."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import structlog

from ecl_gsr.core.exceptions import SamplingError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class SplitSpec:
    """Either fixed node counts or a train ratio with val/test fractions."""

    seed: int = 0
    train_count: Optional[int] = None
    val_count: Optional[int] = None
    test_count: Optional[int] = None
    train_ratio: Optional[float] = None
    val_fraction: float = 0.2
    test_fraction: float = 0.2

    def __post_init__(self):
        if self.train_ratio is None:
            counts = (self.train_count, self.val_count, self.test_count)
            if any(c is None or c < 0 for c in counts):
                raise SamplingError("Count mode needs non-negative train/val/test counts")
        else:
            if not 0 < self.train_ratio < 1:
                raise SamplingError(f"train_ratio must be in (0, 1), got {self.train_ratio}")
            if self.train_ratio + self.val_fraction + self.test_fraction > 1 + 1e-12:
                raise SamplingError("Split fractions exceed 1")

    @classmethod
    def standard(cls, seed=0, train=140, val=500, test=1000):
        """Planetoid-style counts (Cora defaults: 140/500/1000)."""
        return cls(seed=seed, train_count=train, val_count=val, test_count=test)

    @classmethod
    def from_ratio(cls, train_ratio, val_fraction=0.2, test_fraction=0.2, seed=0):
        return cls(
            seed=seed,
            train_ratio=train_ratio,
            val_fraction=val_fraction,
            test_fraction=test_fraction,
        )

    @property
    def is_ratio(self):
        return self.train_ratio is not None


def _floor(x):
    return math.floor(x + 1e-9)


def _allocate(class_sizes, total):
    """Largest-remainder allocation of ``total`` picks proportional to class size."""
    sizes = np.asarray(class_sizes, dtype=np.float64)
    if sizes.sum() == 0:
        return np.zeros(len(sizes), dtype=np.int64)
    quota = total * sizes / sizes.sum()
    alloc = np.floor(quota).astype(np.int64)
    remainder = total - alloc.sum()
    order = np.argsort(-(quota - alloc), kind="stable")
    alloc[order[:remainder]] += 1
    return np.minimum(alloc, class_sizes)


def _even(class_sizes, total):
    """Equal picks per class (remainder to the lowest class ids)."""
    n = len(class_sizes)
    alloc = np.full(n, total // n, dtype=np.int64)
    alloc[: total % n] += 1
    return np.minimum(alloc, class_sizes)


def make_split(graph, spec):
    """
    Install train/val/test masks on a Graph.

    Train nodes are stratified by class: proportional to class size in ratio
    mode, equal per class in count mode. Validation and test nodes are drawn
    uniformly from the remaining labeled nodes.

    Args:
        graph: Graph with labels
        spec: SplitSpec

    Returns:
        New Graph with masks
    """
    rng = np.random.default_rng(spec.seed)
    labeled = graph.labeled_nodes
    v = graph.num_nodes

    if spec.is_ratio:
        n_train = _floor(spec.train_ratio * v)
        n_val = _floor(spec.val_fraction * v)
        n_test = _floor(spec.test_fraction * v)
    else:
        n_train, n_val, n_test = spec.train_count, spec.val_count, spec.test_count

    if n_train + n_val + n_test > len(labeled):
        raise SamplingError(
            f"Split needs {n_train + n_val + n_test} labeled nodes, only {len(labeled)} available"
        )

    classes = np.unique(graph.labels[labeled])
    members = [rng.permutation(labeled[graph.labels[labeled] == c]) for c in classes]
    sizes = np.array([len(m) for m in members], dtype=np.int64)
    alloc = _allocate(sizes, n_train) if spec.is_ratio else _even(sizes, n_train)

    train = np.concatenate([m[:k] for m, k in zip(members, alloc)]) if len(members) else []
    train = np.asarray(train, dtype=np.int64)
    short = n_train - len(train)
    rest = np.setdiff1d(labeled, train)
    if short > 0:
        extra = rng.choice(rest, size=short, replace=False)
        train = np.concatenate([train, extra])
        rest = np.setdiff1d(rest, extra)

    train_labels = graph.labels[train]
    empty = [int(c) for c in classes if not (train_labels == c).any()]
    if empty:
        logger.warning("Split has classes without train nodes", classes=empty)

    rest = rng.permutation(rest)
    val = rest[:n_val]
    test = rest[n_val : n_val + n_test]

    logger.info("Installed split", train=len(train), val=len(val), test=len(test), seed=spec.seed)
    return graph.with_masks(train, val, test)
