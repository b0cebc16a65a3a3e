"""Energies and contrastive terms over pooled view embeddings."""

from dataclasses import dataclass

import numpy as np

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.tape import as_value
from ecl_gsr.core.exceptions import ConfigurationError, ShapeError


@dataclass(frozen=True)
class EclHyper:
    tau: float = 0.1
    alpha: float = 0.1
    beta: float = 0.01
    lam: float = 0.01
    k_steps: int = 3

    def __post_init__(self):
        if self.tau <= 0:
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        if self.alpha < 0 or self.beta < 0:
            raise ConfigurationError("alpha and beta must be non-negative")
        if self.lam <= 0:
            raise ConfigurationError(f"SGLD step size must be positive, got {self.lam}")
        if self.k_steps < 0:
            raise ConfigurationError(f"k_steps must be non-negative, got {self.k_steps}")

    @classmethod
    def from_config(cls, config):
        return cls(
            tau=config.tau,
            alpha=config.alpha,
            beta=config.beta,
            lam=config.sgld_lambda,
            k_steps=config.k_steps,
        )


@dataclass(frozen=True, eq=False)
class BatchEmbeddings:
    """Pooled embeddings of both views, row ``n`` belonging to pair ``n``."""

    z_a: object
    z_b: object

    def __post_init__(self):
        if self.z_a.shape != self.z_b.shape or len(self.z_a.shape) != 2:
            raise ShapeError(f"View embeddings differ in shape: {self.z_a.shape}, {self.z_b.shape}")

    @property
    def num_pairs(self):
        return self.z_a.shape[0]


def _check_tau(tau):
    if tau <= 0:
        raise ConfigurationError(f"tau must be positive, got {tau}")


def pair_energy(z, z_prime, tau):
    """Squared Euclidean distance divided by ``tau``."""
    _check_tau(tau)
    z, z_prime = as_value(z), as_value(z_prime)
    if z.shape != z_prime.shape:
        raise ShapeError(f"pair_energy: shapes {z.shape} and {z_prime.shape} differ")
    return ops.scale(ops.sum_(ops.square(ops.sub(z, z_prime))), 1.0 / tau)


def discriminative_loss(emb, tau):
    """
    Contrastive loss with every one of the 2N views as an anchor.

    For anchor i the positive is the other view of its pair and the negatives
    are the 2(N-1) views of all other pairs. Per anchor the loss is
    E_pos + log(sum_neg exp(-E_neg)) - log(2N); the result is the anchor mean.
    """
    _check_tau(tau)
    n = emb.num_pairs
    if n < 2:
        raise ShapeError(f"discriminative_loss needs at least 2 pairs, got {n}")
    two_n = 2 * n
    z = ops.concat_rows([emb.z_a, emb.z_b])
    energies = ops.scale(ops.pairwise_sq_dist(z), 1.0 / tau)

    anchors = np.arange(two_n)
    positives = (anchors + n) % two_n
    others = np.array(
        [[j for j in range(two_n) if j != i and j != (i + n) % two_n] for i in range(two_n)]
    )
    e_pos = ops.take(energies, anchors, positives)
    e_neg = ops.reshape(
        ops.take(energies, np.repeat(anchors, two_n - 2), others.ravel()), (two_n, two_n - 2)
    )
    per_anchor = ops.add(e_pos, ops.logsumexp(ops.neg(e_neg), axis=1))
    return ops.sub(ops.mean(per_anchor), float(np.log(two_n)))


def batch_marginal_energy(z_a, z_b, tau):
    """-log sum_n exp(-||z_n - z'_n||^2 / tau), overflow-safe."""
    _check_tau(tau)
    z_a, z_b = as_value(z_a), as_value(z_b)
    if z_a.shape != z_b.shape or z_a.ndim != 2 or z_a.shape[0] < 1:
        raise ShapeError(f"batch_marginal_energy: shapes {z_a.shape} and {z_b.shape}")
    energies = ops.scale(ops.sum_(ops.square(ops.sub(z_a, z_b)), axis=1), 1.0 / tau)
    return ops.neg(ops.logsumexp(ops.neg(energies)))


def regularization_loss(emb, tau):
    """Sum of squared cross-pair energies E(z_n, z'_m), n != m, over 2N."""
    _check_tau(tau)
    n = emb.num_pairs
    if n < 2:
        raise ShapeError(f"regularization_loss needs at least 2 pairs, got {n}")
    cross = ops.scale(ops.pairwise_sq_dist(emb.z_a, emb.z_b), 1.0 / tau)
    off_diagonal = 1.0 - np.eye(n)
    return ops.scale(ops.sum_(ops.mul(ops.square(cross), off_diagonal)), 1.0 / (2 * n))
