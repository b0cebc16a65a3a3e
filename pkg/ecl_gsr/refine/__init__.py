"""Edge prediction and adjacency refinement."""

from ecl_gsr.refine.binarize import RefinedAdjacency, binarize, pair_uniforms
from ecl_gsr.refine.edges import (
    DENSE,
    EdgeProbMatrix,
    build_candidates,
    center_rows,
    cosine_neighbors,
    edge_probabilities,
    full_node_embeddings,
    refinement_embeddings,
)
from ecl_gsr.refine.export import export_refined_edges, refined_graph

__all__ = [
    "RefinedAdjacency",
    "binarize",
    "pair_uniforms",
    "DENSE",
    "EdgeProbMatrix",
    "build_candidates",
    "center_rows",
    "cosine_neighbors",
    "edge_probabilities",
    "full_node_embeddings",
    "refinement_embeddings",
    "export_refined_edges",
    "refined_graph",
]
