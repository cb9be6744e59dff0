"""Script to compare the Reeb graphs of thickened samples against the Reeb graphs of the sampled shapes."""

import os
from pathlib import Path
from typing import List

import click
import hydra
import matplotlib.pyplot as plt
from hydra.utils import instantiate

import reebsweep.utils.logger_utils as logger_utils
from reebsweep.experiments.approximation import ExperimentConfig, ExperimentReport, run_suite, summary_table

DEFAULT_CONFIG_NAMES = [
    "circle_experiment.yaml",
    "annulus_experiment.yaml",
    "two_clusters_experiment.yaml",
    "figure_eight_experiment.yaml",
]


def load_experiment_config(config_name: str) -> ExperimentConfig:
    with hydra.initialize_config_module(config_module="reebsweep.configs", version_base=None):
        # config is relative to the `reebsweep` module
        cfg = hydra.compose(config_name=config_name)
        return instantiate(cfg.ExperimentConfig, _convert_="all")


def render_experiment(config: ExperimentConfig, report: ExperimentReport, save_fpath: str) -> None:
    """Draw the samples with their eps-discs, and the critical values of the computed Reeb graph as level lines."""
    points = config.sampler.sample()
    fig, ax = plt.subplots(figsize=(6, 6))
    for x, y in points:
        ax.add_patch(plt.Circle((x, y), config.eps, color="tab:blue", alpha=0.15, linewidth=0))
    ax.scatter(points[:, 0], points[:, 1], s=4, color="k")

    # Levels of f(x, y) = w.(x, y) + b are only drawn for the vertical direction.
    if tuple(config.direction) == (0.0, 1.0):
        for value in report.critical_values:
            ax.axhline(value - config.offset, color="tab:red", linewidth=0.5)

    ax.set_aspect("equal")
    ax.set_title(repr(report), fontsize=7)
    plt.tight_layout()
    plt.savefig(save_fpath, dpi=200)
    plt.close(fig)


@click.command(help="Script to run the Reeb graph approximation experiments.")
@click.option(
    "--config_names",
    type=str,
    multiple=True,
    default=DEFAULT_CONFIG_NAMES,
    help="File names of config files under `reebsweep/configs/*` (not file paths!).",
)
@click.option("--output_dir", type=str, required=True, help="Directory where reports and renderings are saved to.")
@click.option("--num_processes", type=int, default=1, help="Number of processes running experiments in parallel.")
@click.option("--render", is_flag=True, default=False, help="Save a rendering of every experiment.")
def run_approximation_experiments(config_names: List[str], output_dir: str, num_processes: int, render: bool) -> None:
    """Click entry point for the approximation experiments."""
    os.makedirs(output_dir, exist_ok=True)
    logger = logger_utils.get_logger()

    configs = [load_experiment_config(config_name) for config_name in config_names]
    reports = run_suite(configs, num_processes=num_processes)

    for config_name, config, report in zip(config_names, configs, reports):
        stem = Path(config_name).stem
        report.save_as_json(f"{output_dir}/{stem}_report.json")
        if render:
            render_experiment(config, report, f"{output_dir}/{stem}.pdf")
        logger.info("%r", report)

    table = summary_table(reports)
    table.to_csv(f"{output_dir}/approximation_summary.csv", index=False)
    print(table.to_string(index=False))


if __name__ == "__main__":
    run_approximation_experiments()
