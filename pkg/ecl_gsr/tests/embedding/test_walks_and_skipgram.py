"""Tests for random walks and skip-gram training."""

import numpy as np
import pytest
from scipy.special import expit

from ecl_gsr.core.exceptions import ConfigurationError
from ecl_gsr.embedding.skipgram import (
    SkipGramTrainer,
    context_pairs,
    negative_table,
    skipgram_step,
)
from ecl_gsr.embedding.walks import PAD, random_walks


def test_isolated_node_walk_stops_at_root(graph_factory):
    graph = graph_factory(3, [(0, 1)])

    corpus = random_walks(graph, walk_length=5, walks_per_node=2, seed=0)

    for row in corpus.paths[corpus.paths[:, 0] == 2]:
        assert row.tolist() == [2, PAD, PAD, PAD, PAD]
    assert [len(w) for w in corpus.walks if w[0] == 2] == [1, 1]


def test_two_node_walk_alternates(graph_factory):
    corpus = random_walks(graph_factory(2, [(0, 1)]), walk_length=6, walks_per_node=1, seed=0)

    assert corpus.paths.tolist() == [[0, 1, 0, 1, 0, 1], [1, 0, 1, 0, 1, 0]]


def test_walk_steps_follow_edges(two_triangles):
    corpus = random_walks(two_triangles, walk_length=10, walks_per_node=3, seed=1)
    edges = {tuple(e) for e in two_triangles.edges.tolist()}

    for walk in corpus.walks:
        for a, b in zip(walk[:-1], walk[1:]):
            assert (min(a, b), max(a, b)) in edges


def test_triangle_first_step_is_uniform(triangle):
    corpus = random_walks(triangle, walk_length=2, walks_per_node=4000, seed=2)
    from_zero = corpus.paths[corpus.paths[:, 0] == 0, 1]

    assert abs((from_zero == 1).mean() - 0.5) < 0.03


def test_walks_are_seeded(two_triangles):
    a = random_walks(two_triangles, 8, 2, seed=5)
    b = random_walks(two_triangles, 8, 2, seed=5)

    np.testing.assert_array_equal(a.paths, b.paths)


def test_context_pairs_are_symmetric(graph_factory):
    corpus = random_walks(graph_factory(2, [(0, 1)]), walk_length=3, walks_per_node=1, seed=0)

    centers, contexts = context_pairs(corpus, window=1)

    pairs = sorted(zip(centers.tolist(), contexts.tolist()))
    assert pairs == [(0, 1), (0, 1), (0, 1), (0, 1), (1, 0), (1, 0), (1, 0), (1, 0)]


def test_negative_table_uses_three_quarter_power():
    table = negative_table([1.0, 16.0])

    np.testing.assert_allclose(table, [1 / 9, 8 / 9])


def test_skipgram_step_matches_hand_gradient():
    w_in = np.array([[1.0, 0.0], [0.0, 1.0]])
    w_out = np.array([[0.0, 0.0], [0.5, 0.0]])
    lr = 0.1
    s = expit(0.5)

    loss = skipgram_step(w_in, w_out, np.array([0]), np.array([1]), np.array([[0]]), lr)

    assert loss == pytest.approx(-np.log(s) - np.log(0.5))
    np.testing.assert_allclose(w_in[0], [1.0 - lr * (s - 1.0) * 0.5, 0.0])
    np.testing.assert_allclose(w_out[1], [0.5 - lr * (s - 1.0), 0.0])
    np.testing.assert_allclose(w_out[0], [-lr * 0.5, 0.0])


def test_zero_epochs_returns_initialization(two_triangles):
    corpus = random_walks(two_triangles, 5, 1, seed=0)
    x = SkipGramTrainer(dim=3, epochs=0).fit(corpus, seed=7)
    expected = (np.random.default_rng(7).random((7, 3)) - 0.5) / 3

    np.testing.assert_array_equal(x, expected)


def test_rejects_non_positive_dimension():
    with pytest.raises(ConfigurationError):
        SkipGramTrainer(dim=0)


def test_cliques_separate(graph_factory):
    clique = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    edges = clique + [(i + 5, j + 5) for i, j in clique]
    graph = graph_factory(10, edges)
    corpus = random_walks(graph, walk_length=10, walks_per_node=10, seed=0)

    trainer = SkipGramTrainer(dim=8, window=3, epochs=10, batch_size=64)
    x = trainer.fit(corpus, seed=0)

    unit = x / np.linalg.norm(x, axis=1, keepdims=True)
    cos = unit @ unit.T
    same = np.add.outer(np.arange(10) // 5, -(np.arange(10) // 5)) == 0
    off = ~np.eye(10, dtype=bool)
    assert cos[same & off].mean() > cos[~same].mean()
    assert trainer.epoch_losses[-1] < trainer.epoch_losses[0]


def test_skipgram_loss_decreases_steadily(graph_factory):
    clique = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    graph = graph_factory(10, clique + [(i + 5, j + 5) for i, j in clique] + [(4, 5)])
    corpus = random_walks(graph, walk_length=10, walks_per_node=10, seed=1)

    trainer = SkipGramTrainer(dim=8, window=3, epochs=15, lr=0.01, batch_size=64)
    trainer.fit(corpus, seed=0)

    losses = trainer.epoch_losses
    assert len(losses) == 15
    for before, after in zip(losses[:-1], losses[1:]):
        assert after <= 1.05 * before
    assert losses[-1] < losses[0]
