"""Energy-based contrastive learning objective."""

from ecl_gsr.model.encoder import embed_views, encode, project, project_pool
from ecl_gsr.model.energy import (
    BatchEmbeddings,
    EclHyper,
    batch_marginal_energy,
    discriminative_loss,
    pair_energy,
    regularization_loss,
)
from ecl_gsr.model.loss import (
    EclComponents,
    batch_embeddings,
    combine_losses,
    ecl_loss,
    generative_loss,
)
from ecl_gsr.model.params import EclParams
from ecl_gsr.model.sgld import sgld_sample

__all__ = [
    "embed_views",
    "encode",
    "project",
    "project_pool",
    "BatchEmbeddings",
    "EclHyper",
    "batch_marginal_energy",
    "discriminative_loss",
    "pair_energy",
    "regularization_loss",
    "EclComponents",
    "batch_embeddings",
    "combine_losses",
    "ecl_loss",
    "generative_loss",
    "EclParams",
    "sgld_sample",
]
