"""Skip-gram with negative sampling over a walk corpus."""

import numpy as np
import structlog
from scipy.special import expit

from ecl_gsr.core.exceptions import ConfigurationError, SamplingError
from ecl_gsr.embedding.walks import PAD

logger = structlog.get_logger(__name__)

_MIN_LR_FRACTION = 1e-4
_EPS = 1e-12


def context_pairs(corpus, window):
    """All (center, context) pairs within ``window`` positions in each walk."""
    paths = corpus.paths
    centers, contexts = [], []
    for shift in range(1, window + 1):
        if shift >= paths.shape[1]:
            break
        left, right = paths[:, :-shift].ravel(), paths[:, shift:].ravel()
        valid = (left != PAD) & (right != PAD)
        centers += [left[valid], right[valid]]
        contexts += [right[valid], left[valid]]
    if not centers:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(centers), np.concatenate(contexts)


def negative_table(degrees):
    """Sampling distribution proportional to degree^(3/4)."""
    weights = np.power(np.asarray(degrees, dtype=np.float64), 0.75)
    if weights.sum() <= 0:
        weights = np.ones_like(weights)
    return weights / weights.sum()


def skipgram_step(w_in, w_out, centers, contexts, negatives, lr):
    """
    One SGD step on a batch of (center, context, negatives) triples.

    Updates ``w_in`` and ``w_out`` in place with the gradient of
    -log s(u.v) - sum_k log s(-u.v_k), s being the logistic sigmoid.

    Args:
        w_in: (V, d) center embeddings
        w_out: (V, d) context embeddings
        centers: (B,) center node ids
        contexts: (B,) positive context ids
        negatives: (B, k) negative context ids
        lr: Step size

    Returns:
        Mean loss of the batch before the update
    """
    u = w_in[centers]
    v_pos = w_out[contexts]
    v_neg = w_out[negatives]

    pos_score = expit(np.einsum("bd,bd->b", u, v_pos))
    neg_score = expit(np.einsum("bd,bkd->bk", u, v_neg))
    loss = -np.log(pos_score + _EPS) - np.log(1.0 - neg_score + _EPS).sum(axis=1)

    g_pos = pos_score - 1.0
    grad_u = g_pos[:, None] * v_pos + np.einsum("bk,bkd->bd", neg_score, v_neg)
    grad_pos = g_pos[:, None] * u
    grad_neg = neg_score[:, :, None] * u[:, None, :]

    np.add.at(w_in, centers, -lr * grad_u)
    np.add.at(w_out, contexts, -lr * grad_pos)
    if negatives.size:
        np.add.at(w_out, negatives.ravel(), -lr * grad_neg.reshape(-1, u.shape[1]))
    return float(loss.mean())


class SkipGramTrainer:
    """Mini-batch SGD trainer for DeepWalk embeddings.

    Learning rate decays linearly from ``lr`` over all steps.
    """

    def __init__(self, dim, window=5, negatives_per_positive=5, epochs=5, lr=0.025, batch_size=512):
        if dim <= 0:
            raise ConfigurationError(f"Embedding dimension must be positive, got {dim}")
        self.dim = dim
        self.window = window
        self.negatives_per_positive = negatives_per_positive
        self.epochs = epochs
        self.lr = lr
        self.batch_size = batch_size
        self.epoch_losses = []

    def fit(self, corpus, seed):
        if len(corpus) == 0:
            raise SamplingError("Walk corpus is empty")
        rng = np.random.default_rng(seed)
        v = corpus.num_nodes
        w_in = (rng.random((v, self.dim)) - 0.5) / self.dim
        w_out = np.zeros((v, self.dim), dtype=np.float64)
        self.epoch_losses = []
        if self.epochs == 0:
            return w_in

        centers, contexts = context_pairs(corpus, self.window)
        if len(centers) == 0:
            logger.warning("Walk corpus has no context pairs; returning initialization")
            return w_in
        table = negative_table(corpus.degrees)
        total_steps = self.epochs * int(np.ceil(len(centers) / self.batch_size))
        step = 0

        for epoch in range(self.epochs):
            order = rng.permutation(len(centers))
            losses, sizes = [], []
            for start in range(0, len(order), self.batch_size):
                batch = order[start : start + self.batch_size]
                negatives = rng.choice(v, size=(len(batch), self.negatives_per_positive), p=table)
                lr = self.lr * max(1.0 - step / total_steps, _MIN_LR_FRACTION)
                losses.append(
                    skipgram_step(w_in, w_out, centers[batch], contexts[batch], negatives, lr)
                )
                sizes.append(len(batch))
                step += 1
            epoch_loss = float(np.average(losses, weights=sizes))
            self.epoch_losses.append(epoch_loss)
            logger.debug("Skip-gram epoch", epoch=epoch, loss=epoch_loss)

        return w_in


def train_skipgram(corpus, dim, window=5, negatives_per_positive=5, epochs=5, lr=0.025, seed=0):
    """Train skip-gram embeddings and return the (V, dim) center matrix."""
    trainer = SkipGramTrainer(
        dim=dim,
        window=window,
        negatives_per_positive=negatives_per_positive,
        epochs=epochs,
        lr=lr,
    )
    return trainer.fit(corpus, seed)
