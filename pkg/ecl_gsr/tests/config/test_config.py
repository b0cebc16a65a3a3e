"""Tests for settings and training configuration."""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from ecl_gsr.config.settings import Settings
from ecl_gsr.config.train_config import DEFAULT_EPOCHS, TrainConfig, build_config
from ecl_gsr.core.exceptions import ConfigurationError
from ecl_gsr.graph.splits import SplitSpec


def test_defaults():
    config = TrainConfig()

    assert (config.alpha, config.beta, config.mu, config.tau) == (0.1, 0.01, 0.01, 0.1)
    assert config.sgld_lambda == 0.01
    assert config.k_steps == 3
    assert config.batch_n == 64
    assert config.selection == "best_val"
    assert config.resolved_epochs == DEFAULT_EPOCHS


def test_lambda_alias():
    assert build_config({"lambda": 0.05}).sgld_lambda == 0.05


def test_ratio_split_defaults_match_split_spec():
    config = TrainConfig()
    spec = SplitSpec.from_ratio(0.1)

    assert (config.val_fraction, config.test_fraction) == (spec.val_fraction, spec.test_fraction)
    assert config.test_fraction == 0.2
    assert config.center_embeddings is True


@pytest.mark.parametrize(
    "data",
    [
        {"tau": 0.0},
        {"batch_n": 1},
        {"unknown_knob": 1},
        {"train_ratio": 0.5, "val_fraction": 0.3, "test_fraction": 0.3},
        {"sbm_blocks": 8, "sbm_feat_dim": 4},
        {"selection": "best_test"},
    ],
)
def test_invalid_values_raise_configuration_error(data):
    with pytest.raises(ConfigurationError):
        build_config(data)


def test_epochs_follow_dataset_name():
    assert TrainConfig(dataset=Path("/data/Pubmed")).resolved_epochs == 80
    assert TrainConfig(dataset=Path("/data/cora"), epochs=3).resolved_epochs == 3


def test_json_round_trip_with_overrides(tmp_path):
    path = tmp_path / "cfg.json"
    TrainConfig(alpha=0.2, seed=7).to_json(path)

    assert json.loads(path.read_text(encoding="utf-8"))["lambda"] == 0.01
    config = TrainConfig.from_json(path, seed=9, mu=None)
    assert (config.alpha, config.seed, config.mu) == (0.2, 9, 0.01)


def test_from_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]", encoding="utf-8")

    with pytest.raises(ConfigurationError, match="flat JSON object"):
        TrainConfig.from_json(bad)
    with pytest.raises(ConfigurationError, match="not found"):
        TrainConfig.from_json(tmp_path / "missing.json")


def test_config_is_frozen():
    with pytest.raises(ValidationError):
        TrainConfig().alpha = 0.5


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("ECL_GSR_DENSE_NODE_LIMIT", "10")
    monkeypatch.setenv("ECL_GSR_LOG_FORMAT", "console")

    s = Settings()

    assert s.dense_node_limit == 10
    assert s.log_format == "console"
    assert s.candidate_k == 20
