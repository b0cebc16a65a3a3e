"""Graph data model, ingestion, normalization, generation and splits."""

from ecl_gsr.graph.adjacency import NormalizedAdjacency, normalize_adjacency, normalize_pairs
from ecl_gsr.graph.generators import sbm_generate
from ecl_gsr.graph.io import LoadReport, load_graph, read_dataset, save_graph
from ecl_gsr.graph.model import UNLABELED, Graph, canonical_edges
from ecl_gsr.graph.perturb import perturb_edges
from ecl_gsr.graph.splits import SplitSpec, make_split
from ecl_gsr.graph.statistics import DatasetStatistics, dataset_statistics, intra_class_fraction

__all__ = [
    "Graph",
    "UNLABELED",
    "canonical_edges",
    "NormalizedAdjacency",
    "normalize_adjacency",
    "normalize_pairs",
    "load_graph",
    "read_dataset",
    "save_graph",
    "LoadReport",
    "perturb_edges",
    "sbm_generate",
    "SplitSpec",
    "make_split",
    "DatasetStatistics",
    "dataset_statistics",
    "intra_class_fraction",
]
