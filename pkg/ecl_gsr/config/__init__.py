"""Configuration module for ecl-gsr."""

from ecl_gsr.config.settings import Settings, settings
from ecl_gsr.config.train_config import DATASET_EPOCHS, TrainConfig, build_config

__all__ = [
    "Settings",
    "settings",
    "TrainConfig",
    "DATASET_EPOCHS",
    "build_config",
]
