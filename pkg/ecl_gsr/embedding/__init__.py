"""DeepWalk structural embeddings and dual-attribute construction."""

from ecl_gsr.embedding.dual import (
    DualAttributeGraph,
    build_dual,
    cached_structural_embeddings,
    structural_embeddings,
)
from ecl_gsr.embedding.skipgram import SkipGramTrainer, skipgram_step, train_skipgram
from ecl_gsr.embedding.walks import WalkCorpus, random_walks

__all__ = [
    "DualAttributeGraph",
    "build_dual",
    "cached_structural_embeddings",
    "structural_embeddings",
    "SkipGramTrainer",
    "skipgram_step",
    "train_skipgram",
    "WalkCorpus",
    "random_walks",
]
