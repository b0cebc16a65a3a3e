"""Subgraph mini-batching and view augmentation."""

from ecl_gsr.sampling.augment import (
    Augmentation,
    GaussianNoiseAugmentation,
    ViewBatch,
    ViewPair,
    augment_pair,
    build_view_batch,
)
from ecl_gsr.sampling.subgraphs import Subgraph, induced_edges, sample_subgraphs

__all__ = [
    "Augmentation",
    "GaussianNoiseAugmentation",
    "ViewBatch",
    "ViewPair",
    "augment_pair",
    "build_view_batch",
    "Subgraph",
    "induced_edges",
    "sample_subgraphs",
]
