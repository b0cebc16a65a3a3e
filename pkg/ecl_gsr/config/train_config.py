"""Experiment configuration."""

import json
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ecl_gsr.core.exceptions import ConfigurationError

# Default epoch counts of the benchmark datasets, keyed by directory name.
DATASET_EPOCHS = {
    "cora": 40,
    "citeseer": 40,
    "cornell": 40,
    "texas": 40,
    "wisconsin": 40,
    "actor": 80,
    "pubmed": 80,
}
DEFAULT_EPOCHS = 40


class TrainConfig(BaseModel):
    """All knobs of one ECL-GSR training run.

    ``cfg.json`` is a flat JSON object of these fields. ``lambda`` is accepted
    as the key for the SGLD step size.
    """

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    # Objective weights
    alpha: float = Field(0.1, ge=0)
    beta: float = Field(0.01, ge=0)
    mu: float = Field(0.01, ge=0)
    tau: float = Field(0.1, gt=0)

    # SGLD
    lambda_: float = Field(0.01, gt=0, alias="lambda")
    k_steps: int = Field(3, ge=0)

    # Batching and augmentation
    batch_n: int = Field(64, ge=2)
    edges_per_subgraph: int = Field(16, ge=1)
    sigma: float = Field(0.1, ge=0)

    # Optimisation
    epochs: Optional[int] = Field(None, ge=0)
    lr: float = Field(0.001, gt=0)
    lr_halving_every: int = Field(20, ge=1)
    selection: Literal["best_val", "final"] = "best_val"

    # Architecture
    encoder_dim: int = Field(128, ge=1)
    projector_dim: int = Field(128, ge=1)
    classifier_width: int = Field(64, ge=1)

    # Refinement
    bernoulli_temp: float = Field(0.5, gt=0)
    center_embeddings: bool = True

    # DeepWalk block
    walk_length: int = Field(40, ge=1)
    walks_per_node: int = Field(10, ge=1)
    window: int = Field(5, ge=1)
    negatives: int = Field(5, ge=0)
    deepwalk_epochs: int = Field(5, ge=0)
    deepwalk_lr: float = Field(0.025, gt=0)

    # Ablation switches
    use_structural: bool = True
    use_discriminative: bool = True

    # Data
    dataset: Optional[Path] = None
    train_ratio: Optional[float] = Field(None, gt=0, lt=1)
    val_fraction: float = Field(0.2, ge=0, lt=1)
    test_fraction: float = Field(0.2, ge=0, lt=1)

    # Synthetic data, used when no dataset is given
    sbm_blocks: int = Field(4, ge=1)
    sbm_per_block: int = Field(50, ge=1)
    sbm_p_intra: float = Field(0.1, ge=0, le=1)
    sbm_p_inter: float = Field(0.02, ge=0, le=1)
    sbm_feat_dim: int = Field(32, ge=1)
    sbm_feat_noise: float = Field(0.1, ge=0)
    sbm_add_ratio: float = Field(0.3, ge=0)

    seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_fractions(self):
        ratio = self.train_ratio or 0.0
        if ratio + self.val_fraction + self.test_fraction > 1.0 + 1e-12:
            raise ValueError("train_ratio + val_fraction + test_fraction must not exceed 1")
        if self.sbm_feat_dim < self.sbm_blocks:
            raise ValueError("sbm_feat_dim must be at least sbm_blocks")
        return self

    @property
    def sgld_lambda(self):
        return self.lambda_

    @property
    def resolved_epochs(self):
        """Epoch count, falling back to the per-dataset default."""
        if self.epochs is not None:
            return self.epochs
        if self.dataset is not None:
            return DATASET_EPOCHS.get(Path(self.dataset).name.lower(), DEFAULT_EPOCHS)
        return DEFAULT_EPOCHS

    def with_overrides(self, **overrides):
        """Return a copy with non-None overrides applied and re-validated."""
        data = self.model_dump(by_alias=True)
        for key, value in overrides.items():
            if value is None:
                continue
            if key == "lambda_":
                key = "lambda"
            data[key] = value
        return build_config(data)

    @classmethod
    def from_json(cls, path, **overrides):
        """Load a flat JSON config file and apply CLI overrides."""
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise ConfigurationError(f"Config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Invalid JSON in {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"{path}: expected a flat JSON object")
        return build_config(data).with_overrides(**overrides)

    def to_json(self, path):
        payload = self.model_dump(mode="json", by_alias=True)
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        Path(path).write_text(text, encoding="utf-8")


def build_config(data):
    """Validate a mapping into a TrainConfig, raising ConfigurationError."""
    try:
        return TrainConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(str(e)) from e
