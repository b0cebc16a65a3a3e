"""Langevin sampling of negative views."""

import numpy as np
import structlog

from ecl_gsr.autodiff.tape import Tape, Value, gradient, no_grad
from ecl_gsr.core.exceptions import NumericalError
from ecl_gsr.model.encoder import embed_views
from ecl_gsr.model.energy import batch_marginal_energy

logger = structlog.get_logger(__name__)


def sgld_sample(params, batch, hyper, seed, noise=True):
    """
    Run K Langevin steps on the first view of every pair.

    Chains start at ``view_a + Normal(0, lam)`` and follow
    ``nu <- nu - (lam / 2) * grad E(nu) + Normal(0, lam)``, where E is the batch
    marginal energy against the fixed second-view embeddings. Parameter
    gradients are never touched.

    Args:
        params: EclParams
        batch: ViewBatch
        hyper: EclHyper
        seed: Random seed
        noise: When False both the initial and the per-step noise are zero

    Returns:
        List of N arrays shaped like each pair's ``view_a``

    Raises:
        NumericalError: The chain produced a non-finite value
    """
    rng = np.random.default_rng(seed)
    std = float(np.sqrt(hyper.lam))
    adjacencies = [pair.local_adj for pair in batch]

    with no_grad():
        z_b = embed_views(params, adjacencies, [pair.view_b for pair in batch])

    def jitter(shape):
        return rng.normal(0.0, std, size=shape) if noise else np.zeros(shape)

    chains = [pair.view_a + jitter(pair.view_a.shape) for pair in batch]
    for step in range(1, hyper.k_steps + 1):
        nus = [Value(c, requires_grad=True) for c in chains]
        try:
            with Tape():
                z_star = embed_views(params, adjacencies, nus)
                energy = batch_marginal_energy(z_star, z_b, hyper.tau)
                grads = gradient(energy, nus)
        except NumericalError as e:
            raise NumericalError(f"SGLD step {step}: {e}", op=e.op, step=step) from e

        chains = [c - 0.5 * hyper.lam * g + jitter(c.shape) for c, g in zip(chains, grads)]
        if not all(np.isfinite(c).all() for c in chains):
            raise NumericalError(f"SGLD step {step} produced non-finite values", step=step)
        logger.debug("SGLD step", step=step, energy=energy.item())
    return chains
