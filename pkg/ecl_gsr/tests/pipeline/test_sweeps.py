"""Tests for experiment sweeps."""

from unittest.mock import Mock

import pytest

from ecl_gsr.core.exceptions import ConfigurationError
from ecl_gsr.pipeline import sweeps
from ecl_gsr.pipeline.sweeps import (
    AblationSweep,
    ParamSweep,
    RobustnessSweep,
    SweepRow,
    SweepTable,
    sgld_sweep,
)


def fake_evaluation(test_accuracy=0.5, edges=10):
    evaluation = Mock()
    evaluation.test_accuracy = test_accuracy
    evaluation.val_accuracy = 0.4
    evaluation.intra_fraction = 0.9
    evaluation.edges = edges
    return evaluation


@pytest.fixture
def mock_training(monkeypatch):
    """Replace training with mocks that record the configs they receive."""
    calls = []

    def fake_train(config, data=None, show_progress=None):
        calls.append(config)
        return Mock(evaluation=fake_evaluation(test_accuracy=0.1 * config.seed))

    control = Mock(return_value=fake_evaluation(test_accuracy=0.3))
    monkeypatch.setattr(sweeps, "train", fake_train)
    monkeypatch.setattr(sweeps, "train_control", control)
    monkeypatch.setattr(sweeps, "prepare_data", Mock(return_value=Mock()))
    return calls, control


def row(value, seed, acc, method="ecl_gsr"):
    return SweepRow(
        sweep="s",
        parameter="p",
        value=value,
        method=method,
        seed=str(seed),
        test_accuracy=acc,
        val_accuracy=acc,
        intra_fraction=0.5,
        refined_edges=4.0,
        wall_time=1.0,
    )


def test_table_aggregates_mean_and_std():
    table = SweepTable([row("1", 0, 0.6), row("1", 1, 0.8), row("2", 0, 0.5)])

    aggregate = {(r.value, r.seed): r for r in table.aggregate()}

    assert aggregate[("1", "mean")].test_accuracy == pytest.approx(0.7)
    assert aggregate[("1", "std")].test_accuracy == pytest.approx(0.1)
    assert aggregate[("2", "std")].test_accuracy == 0.0
    assert table.summary() == {"1": pytest.approx(0.7), "2": pytest.approx(0.5)}
    assert len(table.rows) == 3 + 4


def test_table_csv(tmp_path):
    path = SweepTable([row("1", 0, 0.25)]).write_csv(tmp_path / "sweep.csv")

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("sweep,parameter,value,method,seed,test_accuracy")
    assert lines[1] == "s,p,1,ecl_gsr,0,0.25,0.25,0.5,4.0,1.0"
    assert lines[2].startswith("s,p,1,ecl_gsr,mean,0.25")


def test_sgld_sweep_overrides_k_per_seed(tiny_config, mock_training):
    calls, _ = mock_training

    table = sgld_sweep(tiny_config, [3, 0], seeds=[1, 2])

    assert [(c.k_steps, c.seed) for c in calls] == [(0, 1), (0, 2), (3, 1), (3, 2)]
    assert table.summary() == {"0": pytest.approx(0.15), "3": pytest.approx(0.15)}


def test_sweep_reuses_prepared_data(tiny_config, mock_training, monkeypatch):
    prepare = Mock(return_value=Mock())
    monkeypatch.setattr(sweeps, "prepare_data", prepare)

    sgld_sweep(tiny_config, [0, 1, 2], seeds=[4])

    assert prepare.call_count == 1


def test_robustness_sweep_runs_control(tiny_config, mock_training):
    calls, control = mock_training

    table = RobustnessSweep(tiny_config, [0.0, 0.2], "remove", seeds=[1]).run()

    assert control.call_count == 2
    methods = [(r.value, r.method) for r in table.runs]
    assert methods == [("0.0", "ecl_gsr"), ("0.0", "gcn"), ("0.2", "ecl_gsr"), ("0.2", "gcn")]
    assert table.summary("gcn") == {"0.0": pytest.approx(0.3), "0.2": pytest.approx(0.3)}
    assert table.runs[0].parameter == "remove_ratio"


@pytest.mark.parametrize("ratios,mode", [([0.9], "add"), ([-0.1], "remove"), ([0.2], "swap")])
def test_robustness_sweep_validation(tiny_config, ratios, mode):
    with pytest.raises(ConfigurationError):
        RobustnessSweep(tiny_config, ratios, mode, seeds=[0])


def test_ablation_variants(tiny_config, mock_training):
    calls, _ = mock_training

    table = AblationSweep(tiny_config.with_overrides(alpha=0.0), seeds=[1]).run()

    assert [r.value for r in table.runs] == [
        "full",
        "no_generative",
        "no_discriminative",
        "raw_attributes",
    ]
    no_disc = calls[2]
    assert not no_disc.use_discriminative and no_disc.alpha > 0
    assert not calls[3].use_structural


def test_param_sweep_casts_integer_parameters(tiny_config, mock_training):
    calls, _ = mock_training

    ParamSweep(tiny_config, "encoder_dim", [16.0, 8.0], seeds=[1]).run()

    assert [c.encoder_dim for c in calls] == [8, 16]


def test_param_sweep_rejects_unknown_parameter(tiny_config):
    with pytest.raises(ConfigurationError):
        ParamSweep(tiny_config, "sigma", [0.1], seeds=[0])


def test_sweep_needs_seeds(tiny_config):
    with pytest.raises(ConfigurationError):
        ParamSweep(tiny_config, "tau", [0.1], seeds=[])
