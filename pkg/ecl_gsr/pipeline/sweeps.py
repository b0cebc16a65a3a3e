"""Experiment sweeps over perturbation ratios, SGLD steps, splits and hyperparameters."""

import time
from abc import ABC, abstractmethod
from dataclasses import astuple, dataclass, fields

import numpy as np
import structlog

from ecl_gsr.core.exceptions import ConfigurationError
from ecl_gsr.graph.io import load_graph
from ecl_gsr.graph.perturb import perturb_edges
from ecl_gsr.pipeline.data import prepare_data, resolve_split, sbm_graphs
from ecl_gsr.pipeline.metrics import write_table
from ecl_gsr.pipeline.trainer import train, train_control

logger = structlog.get_logger(__name__)

ROBUSTNESS_MAX_RATIO = 0.8
PARAM_NAMES = ("alpha", "mu", "encoder_dim", "beta", "tau")
INT_PARAMS = ("encoder_dim",)


@dataclass(frozen=True)
class SweepRow:
    sweep: str
    parameter: str
    value: str
    method: str
    seed: str
    test_accuracy: float
    val_accuracy: float
    intra_fraction: float
    refined_edges: float
    wall_time: float


SWEEP_FIELDS = [f.name for f in fields(SweepRow)]
_NUMERIC = ["test_accuracy", "val_accuracy", "intra_fraction", "refined_edges", "wall_time"]


class SweepTable:
    """Per-run rows followed by mean and std rows per (value, method)."""

    def __init__(self, runs):
        self.runs = list(runs)

    def aggregate(self):
        groups = {}
        for row in self.runs:
            groups.setdefault((row.value, row.method), []).append(row)
        out = []
        for (value, method), rows in groups.items():
            first = rows[0]
            matrix = np.array([[getattr(r, name) for name in _NUMERIC] for r in rows], dtype=float)
            for label, stat in (("mean", np.mean(matrix, axis=0)), ("std", np.std(matrix, axis=0))):
                numbers = dict(zip(_NUMERIC, (float(x) for x in stat)))
                out.append(
                    SweepRow(
                        sweep=first.sweep,
                        parameter=first.parameter,
                        value=value,
                        method=method,
                        seed=label,
                        **numbers,
                    )
                )
        return out

    @property
    def rows(self):
        return self.runs + self.aggregate()

    def summary(self, method="ecl_gsr"):
        """``{value: mean test accuracy}`` for one method."""
        return {
            r.value: r.test_accuracy
            for r in self.aggregate()
            if r.seed == "mean" and r.method == method
        }

    def write_csv(self, path):
        return write_table(path, SWEEP_FIELDS, [astuple(r) for r in self.rows])


def _fmt_value(value):
    return str(value) if not isinstance(value, float) else repr(value)


class Sweep(ABC):
    """Base class for experiment sweeps.

    Subclasses list their settings; the base runs every setting for every
    seed in parameter order.
    """

    name = "sweep"
    parameter = ""

    def __init__(self, config, seeds, show_progress=False):
        if not seeds:
            raise ConfigurationError("A sweep needs at least one seed")
        self.config = config
        self.seeds = list(seeds)
        self.show_progress = show_progress
        self._data = {}

    @abstractmethod
    def settings(self):
        """
        Settings to sweep over.

        Returns:
            List of (value, overrides dict) pairs
        """
        pass

    def data_for(self, config):
        key = (config.seed, config.train_ratio, config.use_structural, str(config.dataset))
        if key not in self._data:
            self._data[key] = prepare_data(config)
        return self._data[key]

    def run_one(self, value, config):
        data = self.data_for(config)
        start = time.monotonic()
        result = train(config, data=data, show_progress=self.show_progress)
        elapsed = time.monotonic() - start
        return [self._row(value, "ecl_gsr", config.seed, result.evaluation, elapsed)]

    def _row(self, value, method, seed, evaluation, elapsed):
        return SweepRow(
            sweep=self.name,
            parameter=self.parameter,
            value=_fmt_value(value),
            method=method,
            seed=str(seed),
            test_accuracy=evaluation.test_accuracy,
            val_accuracy=evaluation.val_accuracy,
            intra_fraction=evaluation.intra_fraction,
            refined_edges=float(evaluation.edges),
            wall_time=round(elapsed, 3),
        )

    def run(self):
        """
        Execute the sweep.

        Returns:
            SweepTable
        """
        runs = []
        for value, overrides in self.settings():
            for seed in self.seeds:
                config = self.config.with_overrides(seed=seed, **overrides)
                rows = self.run_one(value, config)
                for row in rows:
                    logger.info(
                        "Sweep run complete",
                        sweep=self.name,
                        value=row.value,
                        method=row.method,
                        seed=seed,
                        test_accuracy=row.test_accuracy,
                    )
                runs.extend(rows)
        return SweepTable(runs)


class RobustnessSweep(Sweep):
    """Random edge addition or removal, ECL-GSR against a plain GCN on the same graph."""

    name = "robustness"

    def __init__(self, config, ratios, mode, seeds, show_progress=False):
        super().__init__(config, seeds, show_progress)
        if mode not in ("add", "remove"):
            raise ConfigurationError(f"mode must be 'add' or 'remove', got {mode!r}")
        bad = [r for r in ratios if not 0 <= r <= ROBUSTNESS_MAX_RATIO]
        if bad:
            raise ConfigurationError(f"Ratios must be in [0, {ROBUSTNESS_MAX_RATIO}], got {bad}")
        self.ratios = sorted(ratios)
        self.mode = mode
        self.parameter = f"{mode}_ratio"

    def settings(self):
        return [(r, {}) for r in self.ratios]

    def base_graph(self, config):
        if config.dataset is not None:
            return resolve_split(load_graph(config.dataset), config)
        clean, _ = sbm_graphs(config)
        return clean

    def run_one(self, value, config):
        base = self.base_graph(config)
        add, remove = (value, 0.0) if self.mode == "add" else (0.0, value)
        perturbed = perturb_edges(base, add, remove, seed=config.seed)
        data = prepare_data(config, graph=perturbed)

        start = time.monotonic()
        result = train(config, data=data, show_progress=self.show_progress)
        ecl_time = time.monotonic() - start
        start = time.monotonic()
        control = train_control(config, data, show_progress=self.show_progress)
        control_time = time.monotonic() - start
        return [
            self._row(value, "ecl_gsr", config.seed, result.evaluation, ecl_time),
            self._row(value, "gcn", config.seed, control, control_time),
        ]


class SgldSweep(Sweep):
    """Number of Langevin steps K."""

    name = "sgld"
    parameter = "k_steps"

    def __init__(self, config, k_values, seeds, show_progress=False):
        super().__init__(config, seeds, show_progress)
        if any(k < 0 for k in k_values):
            raise ConfigurationError(f"k values must be non-negative, got {k_values}")
        self.k_values = sorted(k_values)

    def settings(self):
        return [(k, {"k_steps": k}) for k in self.k_values]


class RatioSweep(Sweep):
    """Fraction of labeled nodes used for training."""

    name = "train_ratio"
    parameter = "train_ratio"

    def __init__(self, config, ratios, seeds, show_progress=False):
        super().__init__(config, seeds, show_progress)
        self.ratios = sorted(ratios)

    def settings(self):
        return [(r, {"train_ratio": r}) for r in self.ratios]


class AblationSweep(Sweep):
    """Full model against variants with one component switched off."""

    name = "ablation"
    parameter = "variant"

    def settings(self):
        alpha = self.config.alpha if self.config.alpha > 0 else 0.1
        return [
            ("full", {}),
            ("no_generative", {"alpha": 0.0}),
            ("no_discriminative", {"use_discriminative": False, "alpha": alpha}),
            ("raw_attributes", {"use_structural": False}),
        ]


class ParamSweep(Sweep):
    """One hyperparameter over a list of values."""

    name = "param"

    def __init__(self, config, parameter, values, seeds, show_progress=False):
        super().__init__(config, seeds, show_progress)
        if parameter not in PARAM_NAMES:
            raise ConfigurationError(
                f"Unknown sweep parameter {parameter!r}; choose from {', '.join(PARAM_NAMES)}"
            )
        self.parameter = parameter
        cast = int if parameter in INT_PARAMS else float
        self.values = sorted(cast(v) for v in values)

    def settings(self):
        return [(v, {self.parameter: v}) for v in self.values]


def robustness_sweep(config, ratios, mode, seeds, show_progress=False):
    return RobustnessSweep(config, ratios, mode, seeds, show_progress).run()


def sgld_sweep(config, k_values, seeds=None, show_progress=False):
    return SgldSweep(config, k_values, seeds or [config.seed], show_progress).run()


def ratio_sweep(config, ratios, seeds=None, show_progress=False):
    return RatioSweep(config, ratios, seeds or [config.seed], show_progress).run()


def ablation_sweep(config, seeds=None, show_progress=False):
    return AblationSweep(config, seeds or [config.seed], show_progress).run()


def param_sweep(config, parameter, values, seeds=None, show_progress=False):
    return ParamSweep(config, parameter, values, seeds or [config.seed], show_progress).run()
