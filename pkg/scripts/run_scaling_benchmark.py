"""Script to measure how the sweep scales with n(n+t), writing a CSV of counters and timings and a log-log plot.

Each grid cell runs twice: once with the per-event claim assertions enabled, once with them disabled for timing.
"""

import dataclasses
import logging
import os
from pathlib import Path

import click
import hydra
import matplotlib.pyplot as plt
import pandas as pd
from hydra.utils import instantiate

import reebsweep.utils.io as io_utils
import reebsweep.utils.logger_utils as logger_utils
from reebsweep.experiments.scaling_benchmark import ScalingConfig, run_scaling, summarize


def plot_scaling(df: pd.DataFrame, save_fpath: str) -> None:
    """Plot union-find operations and wall time against n(n+t) on log-log axes."""
    plt.style.use("ggplot")
    fig, axes = plt.subplots(1, 2, figsize=(12, 5))
    for regime, regime_df in df.groupby("regime"):
        axes[0].scatter(regime_df["work"], regime_df["uf_operations"], s=10, label=regime)
        axes[1].scatter(regime_df["work"], regime_df["wall_time"], s=10, label=regime)

    for ax, ylabel in zip(axes, ["Union-find operations", "Wall time (s)"]):
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("n(n+t)")
        ax.set_ylabel(ylabel)
        ax.legend()

    plt.tight_layout()
    plt.savefig(save_fpath, dpi=200)
    plt.close(fig)


@click.command(help="Script to benchmark the sweep over a grid of instance sizes.")
@click.option(
    "--config_names",
    type=str,
    multiple=True,
    default=["scaling_sparse.yaml", "scaling_dense.yaml"],
    help="File names of config files under `reebsweep/configs/*` (not file paths!).",
)
@click.option("--output_dir", type=str, required=True, help="Directory where the CSV, plot and summary are saved to.")
@click.option("--num_processes", type=int, default=None, help="Overrides the number of processes of the configs.")
def run_scaling_benchmark(config_names, output_dir: str, num_processes) -> None:
    """Click entry point for the scaling benchmark."""
    os.makedirs(output_dir, exist_ok=True)
    logger_utils.setup_file_logger(output_dir, program_name="scaling_benchmark")

    frames = []
    summaries = {}
    for config_name in config_names:
        with hydra.initialize_config_module(config_module="reebsweep.configs", version_base=None):
            # config is relative to the `reebsweep` module
            cfg = hydra.compose(config_name=config_name)
            config: ScalingConfig = instantiate(cfg.ScalingConfig, _convert_="all")
        if num_processes is not None:
            config = dataclasses.replace(config, num_processes=num_processes)

        df = run_scaling(config)
        summaries[Path(config_name).stem] = summarize(df)
        logging.info("%s: %s", config_name, summaries[Path(config_name).stem])
        frames.append(df)

    results = pd.concat(frames, ignore_index=True)
    date_str = logger_utils.generate_datetime_string()
    csv_fpath = f"{output_dir}/scaling_{date_str}.csv"
    results.to_csv(csv_fpath, index=False)
    plot_scaling(results, f"{output_dir}/scaling_{date_str}.pdf")
    io_utils.save_json_file(f"{output_dir}/scaling_{date_str}_summary.json", summaries)
    print(f"Saved results to {csv_fpath}")
    for name, summary in summaries.items():
        status = "passed" if summary["passed"] else "FAILED"
        print(f"{name}: {status} (uf ratio spread {summary['uf_ratio_spread']:.2f}, time slope {summary['time_slope']:.2f})")


if __name__ == "__main__":
    run_scaling_benchmark()
