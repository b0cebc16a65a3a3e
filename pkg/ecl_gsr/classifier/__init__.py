"""Downstream GCN node classifier."""

from ecl_gsr.classifier.gcn import (
    ClassifierParams,
    accuracy,
    ce_loss,
    classify,
    export_predictions,
    predict,
    propagation_operator,
)

__all__ = [
    "ClassifierParams",
    "accuracy",
    "ce_loss",
    "classify",
    "export_predictions",
    "predict",
    "propagation_operator",
]
