"""Training, evaluation, sweeps and exports."""

from ecl_gsr.pipeline.artifacts import save_run
from ecl_gsr.pipeline.data import PreparedData, prepare_data, resolve_split, sbm_graphs
from ecl_gsr.pipeline.evaluation import Evaluation, evaluate, evaluate_classifier, refine_graph
from ecl_gsr.pipeline.heatmap import block_densities, class_grouped_order, emit_heatmap
from ecl_gsr.pipeline.metrics import EpochRecord, MetricsLog
from ecl_gsr.pipeline.sweeps import (
    AblationSweep,
    ParamSweep,
    RatioSweep,
    RobustnessSweep,
    SgldSweep,
    Sweep,
    SweepTable,
    ablation_sweep,
    param_sweep,
    ratio_sweep,
    robustness_sweep,
    sgld_sweep,
)
from ecl_gsr.pipeline.trainer import Trainer, TrainResult, train, train_control

__all__ = [
    "save_run",
    "PreparedData",
    "prepare_data",
    "resolve_split",
    "sbm_graphs",
    "Evaluation",
    "evaluate",
    "evaluate_classifier",
    "refine_graph",
    "block_densities",
    "class_grouped_order",
    "emit_heatmap",
    "EpochRecord",
    "MetricsLog",
    "AblationSweep",
    "ParamSweep",
    "RatioSweep",
    "RobustnessSweep",
    "SgldSweep",
    "Sweep",
    "SweepTable",
    "ablation_sweep",
    "param_sweep",
    "ratio_sweep",
    "robustness_sweep",
    "sgld_sweep",
    "Trainer",
    "TrainResult",
    "train",
    "train_control",
]
