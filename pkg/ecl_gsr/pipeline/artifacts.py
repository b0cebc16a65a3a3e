"""Run directory layout."""

from pathlib import Path

import structlog

from ecl_gsr.classifier.gcn import export_predictions
from ecl_gsr.pipeline.metrics import METRICS_FILE, TIMING_FILE
from ecl_gsr.refine.export import export_refined_edges

logger = structlog.get_logger(__name__)

CONFIG_FILE = "config.json"
ECL_CHECKPOINT = "ecl.ckpt"
CLASSIFIER_CHECKPOINT = "classifier.ckpt"
REFINED_FILE = "refined_edges.tsv"
PREDICTIONS_FILE = "predictions.tsv"


def save_run(result, config, out_dir):
    """
    Write every artifact of a finished training run.

    Returns:
        Mapping of artifact name to path
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config.to_json(out / CONFIG_FILE)
    paths = {
        "config": out / CONFIG_FILE,
        "metrics": result.metrics.write_csv(out / METRICS_FILE),
        "timing": result.metrics.write_timing_csv(out / TIMING_FILE),
        "ecl_checkpoint": result.ecl.store.save(out / ECL_CHECKPOINT),
        "classifier_checkpoint": result.classifier.store.save(out / CLASSIFIER_CHECKPOINT),
    }
    if result.evaluation is not None:
        paths["refined_edges"] = export_refined_edges(
            result.evaluation.refined, out / REFINED_FILE
        )
        paths["predictions"] = export_predictions(result.evaluation.probs, out / PREDICTIONS_FILE)
    logger.info("Saved run", path=str(out), artifacts=sorted(paths))
    return paths
