"""Evaluation of trained parameters on a refined graph."""

from dataclasses import dataclass

import numpy as np

from ecl_gsr.autodiff.tape import no_grad
from ecl_gsr.classifier.gcn import accuracy, classify
from ecl_gsr.graph.statistics import intra_class_fraction
from ecl_gsr.refine.binarize import RefinedAdjacency, binarize
from ecl_gsr.refine.edges import build_candidates, edge_probabilities, refinement_embeddings


@dataclass(frozen=True, eq=False)
class Evaluation:
    train_accuracy: float
    val_accuracy: float
    test_accuracy: float
    edges: int
    intra_fraction: float
    refined: RefinedAdjacency
    probs: np.ndarray

    def as_dict(self):
        return {
            "train_accuracy": self.train_accuracy,
            "val_accuracy": self.val_accuracy,
            "test_accuracy": self.test_accuracy,
            "edges": self.edges,
            "intra_fraction": self.intra_fraction,
        }


def _masked_accuracy(probs, graph, mask):
    return accuracy(probs, graph.labels, mask) if len(mask) else float("nan")


def evaluate_classifier(classifier, refined, graph):
    """Accuracy on every mask plus refined-graph statistics for a fixed adjacency."""
    with no_grad():
        _, probs = classify(classifier, refined, graph.features)
    pairs, weights = refined.weighted_edges()
    return Evaluation(
        train_accuracy=_masked_accuracy(probs, graph, graph.train_mask),
        val_accuracy=_masked_accuracy(probs, graph, graph.val_mask),
        test_accuracy=_masked_accuracy(probs, graph, graph.test_mask),
        edges=len(pairs),
        intra_fraction=intra_class_fraction(pairs, graph.labels, weights),
        refined=refined,
        probs=probs.data,
    )


def refine_graph(ecl, data, candidates=None, center=True):
    """Hard refined adjacency predicted by the encoder."""
    with no_grad():
        z = refinement_embeddings(ecl, data.dual, center=center)
        if candidates is None:
            candidates = build_candidates(z, data.graph)
        return binarize(edge_probabilities(z, candidates), 1.0, "eval", seed=0)


def evaluate(ecl, classifier, data, candidates=None, center=True):
    """
    Evaluate an ECL encoder and classifier with the hard-thresholded refined graph.

    Args:
        ecl: EclParams
        classifier: ClassifierParams
        data: PreparedData
        candidates: Pair set for edge prediction, chosen automatically when None
        center: Center node representations before the cosine

    Returns:
        Evaluation
    """
    return evaluate_classifier(classifier, refine_graph(ecl, data, candidates, center), data.graph)
