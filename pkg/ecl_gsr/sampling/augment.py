"""Feature-space augmentations producing view pairs."""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from ecl_gsr.core.exceptions import ConfigurationError, SamplingError
from ecl_gsr.sampling.subgraphs import sample_subgraphs


@dataclass(frozen=True, eq=False)
class ViewPair:
    """Two augmented feature views of one subgraph; adjacency is shared."""

    view_a: np.ndarray
    view_b: np.ndarray
    subgraph: object

    @property
    def local_adj(self):
        return self.subgraph.local_adj


@dataclass(frozen=True, eq=False)
class ViewBatch:
    pairs: list

    def __post_init__(self):
        if len(self.pairs) < 2:
            raise SamplingError(f"A view batch needs at least 2 pairs, got {len(self.pairs)}")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


class Augmentation(ABC):
    """Stochastic feature transform applied independently to each view."""

    name = "base"

    @abstractmethod
    def apply(self, x, rng):
        """Return a transformed copy of ``x``; never mutate it."""

    def pair(self, subgraph, seed):
        rng = np.random.default_rng(seed)
        x = subgraph.x_local
        return ViewPair(view_a=self.apply(x, rng), view_b=self.apply(x, rng), subgraph=subgraph)


class GaussianNoiseAugmentation(Augmentation):
    """Additive i.i.d. Normal(0, sigma^2) noise on every feature entry."""

    name = "gaussian"

    def __init__(self, sigma=0.1):
        if sigma < 0:
            raise ConfigurationError(f"sigma must be non-negative, got {sigma}")
        self.sigma = sigma

    def apply(self, x, rng):
        if self.sigma == 0:
            return np.array(x, dtype=np.float64, copy=True)
        return x + rng.normal(0.0, self.sigma, size=x.shape)


def augment_pair(subgraph, sigma, seed):
    """Two independently noised views of ``subgraph.x_local``."""
    return GaussianNoiseAugmentation(sigma).pair(subgraph, seed)


def build_view_batch(dual, batch_n, edges_per_subgraph, sigma, seed, augmentation=None):
    """Sample N subgraphs and augment each into a view pair."""
    augmentation = augmentation or GaussianNoiseAugmentation(sigma)
    subgraphs = sample_subgraphs(dual, batch_n, edges_per_subgraph, seed)
    seeds = np.random.SeedSequence([seed, len(subgraphs)]).spawn(len(subgraphs))
    return ViewBatch(pairs=[augmentation.pair(sg, s) for sg, s in zip(subgraphs, seeds)])
