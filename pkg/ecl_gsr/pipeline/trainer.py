"""End-to-end ECL-GSR training."""

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import structlog
from tqdm import tqdm

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.optim import Adam, lr_schedule
from ecl_gsr.autodiff.tape import Tape, backward, no_grad
from ecl_gsr.classifier.gcn import ClassifierParams, ce_loss, classify
from ecl_gsr.config.settings import settings
from ecl_gsr.core.exceptions import ConfigurationError, DivergenceError, NumericalError
from ecl_gsr.graph.adjacency import normalize_adjacency
from ecl_gsr.model.energy import EclHyper
from ecl_gsr.model.encoder import encode
from ecl_gsr.model.loss import ecl_loss
from ecl_gsr.model.params import EclParams
from ecl_gsr.pipeline.data import prepare_data
from ecl_gsr.pipeline.evaluation import evaluate, evaluate_classifier
from ecl_gsr.pipeline.metrics import EpochRecord, MetricsLog
from ecl_gsr.refine.binarize import RefinedAdjacency, binarize
from ecl_gsr.refine.edges import DENSE, build_candidates, center_rows, edge_probabilities
from ecl_gsr.sampling.augment import build_view_batch

logger = structlog.get_logger(__name__)


def step_seeds(seed, epoch, batch, count=3):
    """Independent integer seeds for one training step."""
    state = np.random.SeedSequence([seed, epoch, batch]).generate_state(count, dtype=np.uint32)
    return [int(s) for s in state]


@dataclass
class TrainResult:
    ecl: EclParams
    classifier: ClassifierParams
    metrics: MetricsLog
    data: object
    evaluation: object = None
    best_epoch: Optional[int] = None
    stats: dict = field(default_factory=dict)


class Trainer:
    """Joint training of the ECL encoder and the node classifier.

    Every batch samples a view batch, computes the ECL loss, refines the full
    graph with relaxed Bernoulli edges, classifies the train nodes, and takes
    one Adam step on L_E + mu * L_C.
    """

    def __init__(self, config, data=None, show_progress=None):
        if not config.use_discriminative and config.alpha == 0:
            raise ConfigurationError("Disabling the discriminative term requires alpha > 0")
        self.config = config
        self.data = data or prepare_data(config)
        self.hyper = EclHyper.from_config(config)
        self.show_progress = settings.show_progress if show_progress is None else show_progress

        graph, dual = self.data.graph, self.data.dual
        if graph.num_edges == 0:
            raise ConfigurationError("Training graph has no edges")
        if len(graph.train_mask) == 0:
            raise ConfigurationError("Training graph has no train nodes")

        self.ecl = EclParams.init(
            dual.x_dual.shape[1],
            encoder_dim=config.encoder_dim,
            projector_dim=config.projector_dim,
            seed=config.seed,
        )
        self.classifier = ClassifierParams.init(
            graph.num_features,
            graph.num_classes,
            width=config.classifier_width,
            seed=config.seed + 1,
        )
        self.store = self.ecl.store.union(self.classifier.store)
        self.optimizer = Adam(self.store, lr=config.lr)
        self.adjacency = normalize_adjacency(graph)
        self.candidates = DENSE
        self.metrics = MetricsLog()

    @property
    def batches_per_epoch(self):
        c = self.config
        return max(1, math.ceil(self.data.graph.num_edges / (c.batch_n * c.edges_per_subgraph)))

    def _node_embeddings(self):
        z = encode(self.ecl, self.adjacency, self.data.dual.x_dual)
        return center_rows(z) if self.config.center_embeddings else z

    def evaluate(self):
        """Evaluate the current parameters on the hard refined graph."""
        return evaluate(
            self.ecl,
            self.classifier,
            self.data,
            self.candidates,
            center=self.config.center_embeddings,
        )

    def _refresh_candidates(self):
        with no_grad():
            z = self._node_embeddings()
        self.candidates = build_candidates(z, self.data.graph)

    def train_step(self, epoch, batch_index):
        """
        One optimization step.

        Returns:
            Tuple of (EclComponents, class loss, total loss)
        """
        config, graph, dual = self.config, self.data.graph, self.data.dual
        batch_seed, sgld_seed, noise_seed = step_seeds(config.seed, epoch, batch_index)

        try:
            with Tape():
                batch = build_view_batch(
                    dual, config.batch_n, config.edges_per_subgraph, config.sigma, batch_seed
                )
                ecl_total, components = ecl_loss(
                    self.ecl,
                    batch,
                    self.hyper,
                    sgld_seed,
                    use_discriminative=config.use_discriminative,
                )
                probs = edge_probabilities(self._node_embeddings(), self.candidates)
                refined = binarize(probs, config.bernoulli_temp, "train", noise_seed)
                _, class_probs = classify(self.classifier, refined, graph.features)
                class_loss = ce_loss(class_probs, graph.labels, graph.train_mask)
                total = ops.add(ecl_total, ops.scale(class_loss, config.mu))
        except NumericalError as e:
            raise DivergenceError(epoch, batch_index, float("nan")) from e

        self.store.zero_grad()
        backward(total)
        self.optimizer.step(lr_schedule(epoch, config.lr, config.lr_halving_every))
        return components, class_loss.item(), total.item()

    def train(self):
        """
        Run all epochs.

        Returns:
            TrainResult with the selected parameters and their evaluation
        """
        config = self.config
        epochs = config.resolved_epochs
        logger.info(
            "Starting training",
            epochs=epochs,
            batches_per_epoch=self.batches_per_epoch,
            parameters=self.store.num_parameters,
            selection=config.selection,
            seed=config.seed,
        )

        start = time.monotonic()
        best_val, best_epoch, best_snapshot = -1.0, None, None

        for epoch in tqdm(range(epochs), desc="Training", disable=not self.show_progress):
            epoch_start = time.monotonic()
            if self.data.graph.num_nodes > settings.dense_node_limit:
                self._refresh_candidates()

            sums = np.zeros(5)
            for batch_index in range(self.batches_per_epoch):
                components, class_loss, _ = self.train_step(epoch, batch_index)
                sums += [
                    components.discriminative,
                    components.generative,
                    components.regularization,
                    components.total,
                    class_loss,
                ]
            disc, gen, reg, ecl_total, class_loss = sums / self.batches_per_epoch

            result = self.evaluate()
            record = EpochRecord(
                epoch=epoch,
                disc_loss=float(disc),
                gen_loss=float(gen),
                reg_loss=float(reg),
                ecl_total=float(ecl_total),
                class_loss=float(class_loss),
                total=float(ecl_total) + config.mu * float(class_loss),
                val_accuracy=result.val_accuracy,
                test_accuracy=result.test_accuracy,
                wall_time=round(time.monotonic() - epoch_start, 3),
            )
            self.metrics.append(record)
            logger.info("Epoch complete", **record.as_dict())

            if result.val_accuracy > best_val:
                best_val, best_epoch = result.val_accuracy, epoch
                best_snapshot = self.store.snapshot()

        if config.selection == "best_val" and best_snapshot is not None:
            self.store.load_snapshot(best_snapshot)
        else:
            best_epoch = epochs - 1 if epochs else None

        evaluation = self.evaluate()
        duration = time.monotonic() - start
        stats = {
            "epochs": epochs,
            "selected_epoch": best_epoch,
            "val_accuracy": evaluation.val_accuracy,
            "test_accuracy": evaluation.test_accuracy,
            "refined_edges": evaluation.edges,
            "intra_fraction": evaluation.intra_fraction,
            "duration_seconds": duration,
        }
        logger.info("Training completed", **stats)
        return TrainResult(
            ecl=self.ecl,
            classifier=self.classifier,
            metrics=self.metrics,
            data=self.data,
            evaluation=evaluation,
            best_epoch=best_epoch,
            stats=stats,
        )


def train(config, data=None, show_progress=None):
    """Train ECL-GSR with ``config`` and return the TrainResult."""
    return Trainer(config, data=data, show_progress=show_progress).train()


def train_control(config, data, steps=None, show_progress=None):
    """
    Plain GCN on the unrefined graph, trained for the same number of steps.

    Uses the same classifier initialization, optimizer, schedule and model
    selection as :class:`Trainer`.

    Returns:
        Evaluation of the selected classifier
    """
    graph = data.graph
    show_progress = settings.show_progress if show_progress is None else show_progress
    classifier = ClassifierParams.init(
        graph.num_features, graph.num_classes, width=config.classifier_width, seed=config.seed + 1
    )
    optimizer = Adam(classifier.store, lr=config.lr)
    adjacency = RefinedAdjacency.from_graph(graph)
    epochs = config.resolved_epochs
    per_epoch = steps or max(
        1, math.ceil(graph.num_edges / (config.batch_n * config.edges_per_subgraph))
    )

    best_val, best_snapshot = -1.0, None
    for epoch in tqdm(range(epochs), desc="Control", disable=not show_progress):
        for _ in range(per_epoch):
            with Tape():
                _, probs = classify(classifier, adjacency, graph.features)
                loss = ce_loss(probs, graph.labels, graph.train_mask)
            classifier.store.zero_grad()
            backward(loss)
            optimizer.step(lr_schedule(epoch, config.lr, config.lr_halving_every))
        val = evaluate_classifier(classifier, adjacency, graph).val_accuracy
        if val > best_val:
            best_val, best_snapshot = val, classifier.store.snapshot()

    if config.selection == "best_val" and best_snapshot is not None:
        classifier.store.load_snapshot(best_snapshot)
    evaluation = evaluate_classifier(classifier, adjacency, graph)
    logger.info("Control training completed", **evaluation.as_dict())
    return evaluation
