"""Tests for parameter storage, checkpoints and Adam."""

import numpy as np
import pytest

from ecl_gsr.autodiff.optim import Adam, lr_schedule
from ecl_gsr.autodiff.params import ParamStore, glorot, read_checkpoint
from ecl_gsr.core.exceptions import ConfigurationError, ExportError, GradientError, ShapeError


@pytest.fixture
def store():
    s = ParamStore()
    s.create("b.weight", np.arange(6.0).reshape(2, 3))
    s.create("a.bias", [[0.5, -0.5]])
    return s


def test_store_iterates_in_name_order(store):
    assert store.names() == ["a.bias", "b.weight"]
    assert store.num_parameters == 8
    assert all(p.requires_grad for p in store.values())


def test_duplicate_name_is_rejected(store):
    with pytest.raises(ConfigurationError):
        store.create("a.bias", [[1.0]])


def test_union_shares_values(store):
    other = ParamStore()
    other.create("c", [1.0])

    merged = store.union(other)

    assert merged["c"] is other["c"]
    assert merged.names() == ["a.bias", "b.weight", "c"]
    with pytest.raises(ConfigurationError):
        store.union(store)


def test_checkpoint_round_trip(tmp_path, store):
    path = store.save(tmp_path / "model.ckpt")
    fresh = ParamStore()
    fresh.create("b.weight", np.zeros((2, 3)))
    fresh.create("a.bias", np.zeros((1, 2)))

    fresh.load(path)

    for name in store.names():
        np.testing.assert_array_equal(fresh[name].data, store[name].data)
    assert sorted(read_checkpoint(path)) == ["a.bias", "b.weight"]


def test_checkpoint_shape_mismatch(tmp_path, store):
    path = store.save(tmp_path / "model.ckpt")
    fresh = ParamStore()
    fresh.create("b.weight", np.zeros((3, 2)))
    fresh.create("a.bias", np.zeros((1, 2)))

    with pytest.raises(ShapeError):
        fresh.load(path)


def test_truncated_checkpoint(tmp_path, store):
    path = store.save(tmp_path / "model.ckpt")
    path.write_bytes(path.read_bytes()[:-8])

    with pytest.raises(ExportError, match="truncated"):
        read_checkpoint(path)


def test_glorot_bounds():
    w = glorot(np.random.default_rng(0), 10, 20)
    limit = np.sqrt(6.0 / 30.0)

    assert w.shape == (10, 20)
    assert np.abs(w).max() <= limit


def test_adam_first_steps_move_by_learning_rate():
    s = ParamStore()
    p = s.create("p", [1.0])
    opt = Adam(s, lr=0.1)

    p.grad = np.array([0.5])
    opt.step()
    assert p.data[0] == pytest.approx(1.0 - 0.1 * 0.5 / (0.5 + 1e-8))

    p.grad = np.array([0.5])
    opt.step()
    assert p.data[0] == pytest.approx(0.8, abs=1e-6)


def test_adam_step_learning_rate_override():
    s = ParamStore()
    p = s.create("p", [0.0])
    opt = Adam(s, lr=0.1)
    p.grad = np.array([-2.0])

    opt.step(lr=0.01)

    assert p.data[0] == pytest.approx(0.01, rel=1e-6)


def test_adam_requires_all_gradients(store):
    store["a.bias"].grad = np.zeros((1, 2))

    with pytest.raises(GradientError, match="b.weight"):
        Adam(store).step()


@pytest.mark.parametrize(
    "epoch,expected", [(0, 0.001), (19, 0.001), (20, 0.0005), (45, 0.00025)]
)
def test_lr_schedule_halves(epoch, expected):
    assert lr_schedule(epoch) == pytest.approx(expected)
