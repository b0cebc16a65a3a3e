"""Generative term and the combined ECL objective."""

from dataclasses import dataclass

from ecl_gsr.autodiff import ops
from ecl_gsr.core.exceptions import ConfigurationError
from ecl_gsr.model.encoder import embed_views
from ecl_gsr.model.energy import (
    BatchEmbeddings,
    batch_marginal_energy,
    discriminative_loss,
    regularization_loss,
)
from ecl_gsr.model.sgld import sgld_sample


@dataclass(frozen=True)
class EclComponents:
    """Raw loss terms of one batch, as floats."""

    discriminative: float
    generative: float
    regularization: float
    total: float


def batch_embeddings(params, batch):
    adjacencies = [pair.local_adj for pair in batch]
    return BatchEmbeddings(
        z_a=embed_views(params, adjacencies, [pair.view_a for pair in batch]),
        z_b=embed_views(params, adjacencies, [pair.view_b for pair in batch]),
    )


def generative_loss(params, batch, nu_star, tau, emb=None):
    """
    Contrastive-divergence surrogate E+ - E-.

    E+ pairs the first views with their partners, E- pairs the SGLD samples
    (held constant) with the same partners. Only E- is re-encoded when
    ``emb`` is given.
    """
    if emb is None:
        emb = batch_embeddings(params, batch)
    z_star = embed_views(params, [pair.local_adj for pair in batch], list(nu_star))
    positive = batch_marginal_energy(emb.z_a, emb.z_b, tau)
    negative = batch_marginal_energy(z_star, emb.z_b, tau)
    return ops.sub(positive, negative)


def combine_losses(discriminative, generative, regularization, hyper):
    """disc + alpha * gen + beta * reg; works on floats or Values."""
    return discriminative + hyper.alpha * generative + hyper.beta * regularization


def ecl_loss(params, batch, hyper, seed, nu_star=None, use_discriminative=True):
    """
    Energy-based contrastive loss of one view batch.

    Args:
        params: EclParams
        batch: ViewBatch
        hyper: EclHyper
        seed: Seed of the SGLD chains
        nu_star: Precomputed SGLD samples, drawn here when None
        use_discriminative: Drop the discriminative term when False

    Returns:
        Tuple of (total loss Value, EclComponents)
    """
    if not use_discriminative and hyper.alpha == 0:
        raise ConfigurationError("ECL loss needs the discriminative or the generative term")

    emb = batch_embeddings(params, batch)
    disc = discriminative_loss(emb, hyper.tau) if use_discriminative else 0.0
    reg = regularization_loss(emb, hyper.tau)

    if hyper.alpha > 0:
        if nu_star is None:
            nu_star = sgld_sample(params, batch, hyper, seed)
        gen = generative_loss(params, batch, nu_star, hyper.tau, emb=emb)
        total = combine_losses(disc, gen, reg, hyper)
    else:
        gen = 0.0
        total = disc + hyper.beta * reg if use_discriminative else hyper.beta * reg

    components = EclComponents(
        discriminative=_scalar(disc),
        generative=_scalar(gen),
        regularization=_scalar(reg),
        total=_scalar(total),
    )
    return total, components


def _scalar(x):
    return x.item() if hasattr(x, "item") else float(x)
