"""Relaxed-Bernoulli and hard binarization of edge probabilities."""

from dataclasses import dataclass

import numpy as np

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.tape import Value
from ecl_gsr.core.exceptions import ConfigurationError

PROB_FLOOR = 1e-6

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _splitmix64(x):
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def pair_uniforms(seed, i, j):
    """
    Uniform(0, 1) draws keyed by (seed, min(i, j), max(i, j)).

    The value of a pair does not depend on which other pairs are drawn.
    """
    i = np.atleast_1d(np.asarray(i, dtype=np.int64))
    j = np.atleast_1d(np.asarray(j, dtype=np.int64))
    lo = np.minimum(i, j).astype(np.uint64)
    hi = np.maximum(i, j).astype(np.uint64)
    with np.errstate(over="ignore"):
        base = _splitmix64(np.full(lo.shape, int(seed) & 0xFFFFFFFFFFFFFFFF, dtype=np.uint64))
        h = _splitmix64(_splitmix64(base ^ lo) ^ hi)
    return ((h >> np.uint64(11)).astype(np.float64) + 0.5) / float(1 << 53)


def logistic_noise(u):
    return np.log(u) - np.log1p(-u)


@dataclass(frozen=True, eq=False)
class RefinedAdjacency:
    """Binarized adjacency on the support of an EdgeProbMatrix.

    ``mode`` is ``"relaxed"`` (values in [0, 1]) or ``"hard"`` (values in {0, 1}).
    """

    values: object
    num_nodes: int
    mode: str
    pairs: np.ndarray = None

    @property
    def is_dense(self):
        return self.pairs is None

    @classmethod
    def from_graph(cls, graph):
        """Hard adjacency holding exactly the graph's edges."""
        return cls(
            values=Value(np.ones(graph.num_edges)),
            num_nodes=graph.num_nodes,
            mode="hard",
            pairs=np.array(graph.edges, dtype=np.int64).reshape(-1, 2),
        )

    def weighted_edges(self):
        """(pairs with i < j, weights) for every nonzero entry."""
        if self.is_dense:
            iu, ju = np.triu_indices(self.num_nodes, k=1)
            weights = self.values.data[iu, ju]
            pairs = np.stack([iu, ju], axis=1)
        else:
            pairs, weights = self.pairs, self.values.data
        keep = weights > 0
        return pairs[keep], weights[keep]

    @property
    def num_edges(self):
        return len(self.weighted_edges()[0])

    def to_dense(self):
        if self.is_dense:
            return np.array(self.values.data, copy=True)
        dense = np.zeros((self.num_nodes, self.num_nodes))
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        dense[i, j] = self.values.data
        dense[j, i] = self.values.data
        return dense


def binarize(probs, temperature, mode, seed):
    """
    Turn edge probabilities into a refined adjacency.

    ``train`` mode draws one logistic noise L per unordered pair and returns
    sigmoid((logit(p) + L) / temperature), p clamped to [1e-6, 1 - 1e-6]; the
    result is differentiable in p. ``eval`` mode thresholds at p >= 0.5.

    Args:
        probs: EdgeProbMatrix
        temperature: Relaxation temperature, positive
        mode: ``"train"`` or ``"eval"``
        seed: Noise seed

    Returns:
        RefinedAdjacency
    """
    if temperature <= 0:
        raise ConfigurationError(f"temperature must be positive, got {temperature}")
    if mode not in ("train", "eval"):
        raise ConfigurationError(f"mode must be 'train' or 'eval', got {mode!r}")

    v = probs.num_nodes
    p = probs.probs
    if mode == "eval":
        hard = (p.data >= 0.5).astype(np.float64)
        if probs.is_dense:
            np.fill_diagonal(hard, 0.0)
        return RefinedAdjacency(values=Value(hard), num_nodes=v, mode="hard", pairs=probs.pairs)

    if probs.is_dense:
        iu, ju = np.triu_indices(v, k=1)
        noise = np.zeros((v, v))
        noise[iu, ju] = logistic_noise(pair_uniforms(seed, iu, ju))
        noise = noise + noise.T
        mask = 1.0 - np.eye(v)
    else:
        noise = logistic_noise(pair_uniforms(seed, probs.pairs[:, 0], probs.pairs[:, 1]))
        mask = None

    clamped = ops.clip(p, PROB_FLOOR, 1.0 - PROB_FLOOR)
    logit = ops.sub(ops.log(clamped), ops.log(ops.sub(1.0, clamped)))
    relaxed = ops.sigmoid(ops.scale(ops.add(logit, noise), 1.0 / temperature))
    if mask is not None:
        relaxed = ops.mul(relaxed, mask)
    return RefinedAdjacency(values=relaxed, num_nodes=v, mode="relaxed", pairs=probs.pairs)
