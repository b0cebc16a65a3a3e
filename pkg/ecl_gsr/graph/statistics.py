"""Dataset statistics and homophily measures."""

from dataclasses import asdict, dataclass

import numpy as np

from ecl_gsr.graph.model import UNLABELED


@dataclass(frozen=True)
class DatasetStatistics:
    nodes: int
    edges: int
    classes: int
    features: int
    homophily: float
    average_degree: float
    train: int
    val: int
    test: int

    def as_dict(self):
        return asdict(self)


def intra_class_fraction(pairs, labels, weights=None, restrict_to_labeled=True):
    """
    Weighted share of edges joining two nodes of the same class.

    Pairs touching an unlabeled node are ignored unless
    ``restrict_to_labeled`` is False, in which case they count as
    inter-class. Returns NaN when no pair qualifies.

    Args:
        pairs: (E, 2) node index pairs
        labels: Per-node labels with UNLABELED for missing
        weights: Optional (E,) edge weights
        restrict_to_labeled: Drop pairs with an unlabeled endpoint

    Returns:
        Fraction in [0, 1]
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    labels = np.asarray(labels)
    w = np.ones(len(pairs)) if weights is None else np.asarray(weights, dtype=np.float64).ravel()
    a, b = labels[pairs[:, 0]], labels[pairs[:, 1]]
    known = (a != UNLABELED) & (b != UNLABELED)
    counted = known if restrict_to_labeled else np.ones(len(pairs), dtype=bool)
    total = w[counted].sum()
    if total <= 0:
        return float("nan")
    return float(w[known & (a == b)].sum() / total)


def dataset_statistics(graph):
    """Node/edge/class counts, edge homophily and average degree of a Graph."""
    return DatasetStatistics(
        nodes=graph.num_nodes,
        edges=graph.num_edges,
        classes=graph.num_classes,
        features=graph.num_features,
        homophily=intra_class_fraction(graph.edges, graph.labels),
        average_degree=2.0 * graph.num_edges / graph.num_nodes,
        train=len(graph.train_mask),
        val=len(graph.val_mask),
        test=len(graph.test_mask),
    )
