"""Command-line interface for ECL-GSR experiments."""

from pathlib import Path

import click
import structlog
from rich.console import Console
from rich.table import Table

from ecl_gsr.config.settings import settings
from ecl_gsr.config.train_config import TrainConfig, build_config
from ecl_gsr.core.exceptions import EclGsrError
from ecl_gsr.core.logging import setup_logging
from ecl_gsr.embedding.dual import structural_embeddings
from ecl_gsr.graph.generators import sbm_generate
from ecl_gsr.graph.io import STRUCTURAL_FILE, load_graph, save_graph, save_matrix_csv
from ecl_gsr.graph.perturb import perturb_edges
from ecl_gsr.graph.splits import SplitSpec, make_split
from ecl_gsr.graph.statistics import dataset_statistics
from ecl_gsr.pipeline.artifacts import CLASSIFIER_CHECKPOINT, CONFIG_FILE, ECL_CHECKPOINT, save_run
from ecl_gsr.pipeline.data import DEFAULT_TRAIN_RATIO, prepare_data
from ecl_gsr.pipeline.evaluation import evaluate
from ecl_gsr.pipeline.heatmap import block_densities, class_grouped_order, emit_heatmap
from ecl_gsr.pipeline.sweeps import (
    PARAM_NAMES,
    ablation_sweep,
    param_sweep,
    ratio_sweep,
    robustness_sweep,
    sgld_sweep,
)
from ecl_gsr.pipeline.trainer import Trainer, train

# Setup console for rich output
console = Console()
logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

EXISTING_DIR = click.Path(exists=True, file_okay=False, path_type=Path)
OUT_DIR = click.Path(file_okay=False, path_type=Path)
OUT_FILE = click.Path(dir_okay=False, path_type=Path)


def _number_list(cast):
    def parse(ctx, param, value):
        if value is None:
            return None
        try:
            return [cast(v) for v in value.split(",") if v.strip()]
        except ValueError:
            raise click.BadParameter(f"expected comma-separated numbers, got {value!r}") from None

    return parse


def common_options(func):
    """``--config`` and ``--seed``, shared by every subcommand."""
    func = click.option(
        "--seed", type=int, default=None, help="Random seed (overrides the config)"
    )(func)
    return click.option(
        "--config",
        "config_path",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="Flat JSON file of training options",
    )(func)


def training_options(func):
    """Flags overriding the most common TrainConfig fields."""
    options = [
        click.option("--dataset", type=OUT_DIR),
        click.option("--epochs", type=int),
        click.option("--alpha", type=float),
        click.option("--beta", type=float),
        click.option("--mu", type=float),
        click.option("--tau", type=float),
        click.option("--k-steps", "k_steps", type=int),
        click.option("--batch-n", "batch_n", type=int),
        click.option("--train-ratio", "train_ratio", type=float),
        click.option("--selection", type=click.Choice(["best_val", "final"])),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def load_config(config_path=None, **overrides):
    """TrainConfig from an optional JSON file plus non-None overrides."""
    if config_path is not None:
        return TrainConfig.from_json(config_path, **overrides)
    return build_config({}).with_overrides(**overrides)


def _seeds(seeds, config):
    return seeds or [config.seed]


def _print_mapping(title, mapping):
    table = Table(title=title)
    table.add_column("Field", style="cyan")
    table.add_column("Value", style="green")
    for key, value in mapping.items():
        table.add_row(key, f"{value:.4f}" if isinstance(value, float) else str(value))
    console.print(table)


def _print_sweep(title, sweep_table):
    table = Table(title=title)
    for column in ("value", "method", "mean test acc", "std"):
        table.add_column(column, style="cyan" if column in ("value", "method") else "green")
    aggregate = sweep_table.aggregate()
    stds = {(r.value, r.method): r.test_accuracy for r in aggregate if r.seed == "std"}
    for row in aggregate:
        if row.seed == "mean":
            std = stds[(row.value, row.method)]
            table.add_row(row.value, row.method, f"{row.test_accuracy:.4f}", f"{std:.4f}")
    console.print(table)


def _write_sweep(title, sweep_table, out):
    path = sweep_table.write_csv(out)
    _print_sweep(title, sweep_table)
    console.print(f"Wrote {path}")


@click.group()
@click.version_option(version="0.1.0")
@click.option("--log-level", default=None, help="Override the configured log level")
def cli(log_level):
    """ECL-GSR: energy-based contrastive graph structure refinement."""
    setup_logging(log_level or settings.log_level, settings.log_format)


@cli.command()
@common_options
@click.option("--dataset", required=True, type=EXISTING_DIR)
@click.option("--out", type=OUT_FILE, help="Defaults to <dataset>/x_s.csv")
def embed(config_path, seed, dataset, out):
    """Compute DeepWalk structural embeddings and cache them."""
    config = load_config(config_path, seed=seed, dataset=dataset)
    graph = load_graph(dataset)
    x_s = structural_embeddings(graph, config)
    path = out or Path(dataset) / STRUCTURAL_FILE
    save_matrix_csv(x_s, path)
    rows, cols = x_s.shape
    console.print(f"[bold green]Wrote {rows}x{cols} embeddings to {path}[/bold green]")


@cli.command(name="train")
@common_options
@training_options
@click.option("--out", type=OUT_DIR, help="Run directory")
def train_command(config_path, seed, out, **overrides):
    """Train ECL-GSR and write the run directory."""
    config = load_config(config_path, seed=seed, **overrides)
    console.print(f"[bold blue]Training for {config.resolved_epochs} epochs...[/bold blue]")
    result = train(config)
    out = out or settings.output_dir / f"train-seed{config.seed}"
    paths = save_run(result, config, out)
    _print_mapping("Training Results", result.stats)
    console.print(f"Run directory: {paths['metrics'].parent}")


def _restore(run_dir, config_path, seed):
    run_dir = Path(run_dir)
    config = load_config(config_path or run_dir / CONFIG_FILE, seed=seed)
    trainer = Trainer(config, show_progress=False)
    trainer.ecl.store.load(run_dir / ECL_CHECKPOINT)
    trainer.classifier.store.load(run_dir / CLASSIFIER_CHECKPOINT)
    return config, trainer


@cli.command(name="eval")
@common_options
@click.option("--run", "run_dir", required=True, type=EXISTING_DIR)
def eval_command(config_path, seed, run_dir):
    """Evaluate the checkpoints of a run directory."""
    _, trainer = _restore(run_dir, config_path, seed)
    result = evaluate(
        trainer.ecl, trainer.classifier, trainer.data, center=trainer.config.center_embeddings
    )
    _print_mapping("Evaluation", result.as_dict())


@cli.command()
@common_options
@click.option("--dataset", required=True, type=EXISTING_DIR)
@click.option("--add", "add_ratio", type=float, default=0.0, show_default=True)
@click.option("--remove", "remove_ratio", type=float, default=0.0, show_default=True)
@click.option("--out", required=True, type=OUT_DIR)
def perturb(config_path, seed, dataset, add_ratio, remove_ratio, out):
    """Randomly add or remove edges of a dataset."""
    config = load_config(config_path, seed=seed)
    graph = perturb_edges(load_graph(dataset), add_ratio, remove_ratio, seed=config.seed)
    save_graph(graph, out)
    console.print(f"[bold green]Wrote {graph.num_edges} edges to {out}[/bold green]")


@cli.command()
@common_options
@click.option("--blocks", type=int, default=None)
@click.option("--per-block", "per_block", type=int, default=None)
@click.option("--p-intra", "p_intra", type=float, default=None)
@click.option("--p-inter", "p_inter", type=float, default=None)
@click.option("--feat-dim", "feat_dim", type=int, default=None)
@click.option("--feat-noise", "feat_noise", type=float, default=None)
@click.option("--train-ratio", "train_ratio", type=float, default=None)
@click.option("--out", required=True, type=OUT_DIR)
def sbm(
    config_path, seed, blocks, per_block, p_intra, p_inter, feat_dim, feat_noise, train_ratio, out
):
    """Generate a stochastic block model dataset."""
    config = load_config(
        config_path,
        seed=seed,
        sbm_blocks=blocks,
        sbm_per_block=per_block,
        sbm_p_intra=p_intra,
        sbm_p_inter=p_inter,
        sbm_feat_dim=feat_dim,
        sbm_feat_noise=feat_noise,
        train_ratio=train_ratio,
    )
    graph = sbm_generate(
        blocks=config.sbm_blocks,
        nodes_per_block=config.sbm_per_block,
        p_intra=config.sbm_p_intra,
        p_inter=config.sbm_p_inter,
        feat_dim=config.sbm_feat_dim,
        feat_noise=config.sbm_feat_noise,
        seed=config.seed,
    )
    spec = SplitSpec.from_ratio(
        config.train_ratio or DEFAULT_TRAIN_RATIO,
        val_fraction=config.val_fraction,
        test_fraction=config.test_fraction,
        seed=config.seed,
    )
    save_graph(make_split(graph, spec), out)
    console.print(
        f"[bold green]Wrote {graph.num_nodes} nodes, {graph.num_edges} edges to {out}[/bold green]"
    )


@cli.command()
@common_options
@click.option("--dataset", type=EXISTING_DIR)
def stats(config_path, seed, dataset):
    """Show dataset statistics (the configured SBM graph when no dataset is given)."""
    config = load_config(config_path, seed=seed, dataset=dataset)
    data = prepare_data(config.with_overrides(use_structural=False))
    _print_mapping("Dataset Statistics", dataset_statistics(data.graph).as_dict())


def _seed_option(func):
    return click.option(
        "--seeds", callback=_number_list(int), help="Comma-separated seeds (default: --seed)"
    )(func)


def _out_option(default):
    return click.option(
        "--out", type=OUT_FILE, default=default, show_default=True
    )


@cli.command(name="sweep-robustness")
@common_options
@training_options
@_seed_option
@click.option("--ratios", required=True, callback=_number_list(float), help="e.g. 0,0.2,0.4")
@click.option("--mode", type=click.Choice(["add", "remove"]), default="add", show_default=True)
@_out_option("robustness.csv")
def sweep_robustness(config_path, seed, seeds, ratios, mode, out, **overrides):
    """Edge perturbation robustness, ECL-GSR against plain GCN."""
    config = load_config(config_path, seed=seed, **overrides)
    table = robustness_sweep(config, ratios, mode, _seeds(seeds, config))
    _write_sweep(f"Robustness ({mode})", table, out)


@cli.command(name="sweep-sgld")
@common_options
@training_options
@_seed_option
@click.option("--k", "k_values", required=True, callback=_number_list(int), help="e.g. 0,1,3,5")
@_out_option("sgld.csv")
def sweep_sgld(config_path, seed, seeds, k_values, out, **overrides):
    """Accuracy and wall time per number of SGLD steps."""
    overrides.pop("k_steps", None)
    config = load_config(config_path, seed=seed, **overrides)
    table = sgld_sweep(config, k_values, _seeds(seeds, config))
    _write_sweep("SGLD steps", table, out)


@cli.command(name="sweep-ratio")
@common_options
@training_options
@_seed_option
@click.option(
    "--ratios", required=True, callback=_number_list(float), help="e.g. 0.01,0.03,0.05,0.10"
)
@_out_option("train_ratio.csv")
def sweep_ratio(config_path, seed, seeds, ratios, out, **overrides):
    """Accuracy per fraction of labeled training nodes."""
    overrides.pop("train_ratio", None)
    config = load_config(config_path, seed=seed, **overrides)
    table = ratio_sweep(config, ratios, _seeds(seeds, config))
    _write_sweep("Train ratio", table, out)


@cli.command(name="sweep-ablation")
@common_options
@training_options
@_seed_option
@_out_option("ablation.csv")
def sweep_ablation(config_path, seed, seeds, out, **overrides):
    """Full model against variants without each component."""
    config = load_config(config_path, seed=seed, **overrides)
    table = ablation_sweep(config, _seeds(seeds, config))
    _write_sweep("Ablation", table, out)


@cli.command(name="sweep-param")
@common_options
@training_options
@_seed_option
@click.option("--name", "parameter", required=True, type=click.Choice(PARAM_NAMES))
@click.option("--values", required=True, callback=_number_list(float))
@_out_option("param.csv")
def sweep_param(config_path, seed, seeds, parameter, values, out, **overrides):
    """Accuracy per value of one hyperparameter."""
    overrides.pop(parameter, None)
    config = load_config(config_path, seed=seed, **overrides)
    table = param_sweep(config, parameter, values, _seeds(seeds, config))
    _write_sweep(f"Parameter {parameter}", table, out)


@cli.command()
@common_options
@click.option("--run", "run_dir", required=True, type=EXISTING_DIR)
@click.option("--out", type=OUT_FILE, help="Defaults to <run>/heatmap")
@click.option("--raw", is_flag=True, help="Also write the unrefined adjacency")
def heatmap(config_path, seed, run_dir, out, raw):
    """Class-grouped heatmap of a run's refined adjacency."""
    _, trainer = _restore(run_dir, config_path, seed)
    graph = trainer.data.graph
    refined = evaluate(
        trainer.ecl, trainer.classifier, trainer.data, center=trainer.config.center_embeddings
    ).refined
    order = class_grouped_order(graph.labels)
    base = out or Path(run_dir) / "heatmap"

    matrices = {"refined": refined.to_dense()}
    if raw:
        matrices["raw"] = graph.adjacency_matrix().toarray()
    summary = {}
    for name, matrix in matrices.items():
        path = base if name == "refined" else base.with_name(base.name + "_raw")
        pgm, _ = emit_heatmap(matrix, order, path)
        intra, inter = block_densities(matrix, graph.labels)
        summary[f"{name} intra density"] = intra
        summary[f"{name} inter density"] = inter
        summary[f"{name} image"] = str(pgm)
    _print_mapping("Heatmap", summary)


def main(argv=None):
    """
    Run the CLI and map failures to exit codes.

    Returns:
        0 on success, 1 on usage errors, 2 on runtime errors
    """
    try:
        rv = cli.main(args=argv, prog_name="ecl_gsr", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except (EclGsrError, OSError) as e:
        console.print(f"[bold red]Error: {e}[/bold red]")
        logger.error("Command failed", error=str(e), error_type=type(e).__name__)
        return EXIT_RUNTIME
    return rv if isinstance(rv, int) else EXIT_OK
