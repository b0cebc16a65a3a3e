"""ecl-gsr - energy-based contrastive learning for graph structure refinement."""

__version__ = "0.1.0"
__description__ = "Graph structure refinement with energy-based contrastive learning"

# Core imports for convenience
from ecl_gsr.config.settings import settings
from ecl_gsr.config.train_config import TrainConfig

# Exception imports
from ecl_gsr.core.exceptions import (
    ConfigurationError,
    DivergenceError,
    EclGsrError,
    GraphFormatError,
    GraphValidationError,
    NumericalError,
    SamplingError,
    ShapeError,
)
from ecl_gsr.core.logging import setup_logging
from ecl_gsr.graph.io import load_graph, save_graph
from ecl_gsr.graph.model import Graph
from ecl_gsr.pipeline.evaluation import evaluate
from ecl_gsr.pipeline.trainer import Trainer, train

__all__ = [
    "__version__",
    "settings",
    "setup_logging",
    "TrainConfig",
    "Graph",
    "load_graph",
    "save_graph",
    "Trainer",
    "train",
    "evaluate",
    "EclGsrError",
    "ConfigurationError",
    "DivergenceError",
    "GraphFormatError",
    "GraphValidationError",
    "NumericalError",
    "SamplingError",
    "ShapeError",
]
