"""Command-line entry point: compute the Reeb graph of the eps-thickening of a point cloud.

Exit codes:
    0: success.
    2: malformed input or options (the message names the offending row where there is one).
    3: verification failure (oracle mismatch or failed snapshot check), the output is still written; or a sweep
       invariant violated during the run, in which case nothing is written.
    4: dimension mismatch between the direction and the points.
"""

import dataclasses
import logging
import sys
from typing import Any, Dict, List, Optional

import click
import hydra
from click.core import ParameterSource
from hydra.utils import instantiate

import reebsweep.utils.io as io_utils
import reebsweep.utils.logger_utils as logger_utils
from reebsweep.algorithms.ball_intervals import build_inputs
from reebsweep.algorithms.naive_reeb import StateCheckReport, check_state, compare_graphs, naive_reeb
from reebsweep.algorithms.reeb_extraction import extract
from reebsweep.algorithms.sweep import SweepState, sweep
from reebsweep.common.errors import ContractViolationError, DimensionMismatchError, InputError, InvariantViolationError
from reebsweep.common.labeled_interval import LabeledInterval
from reebsweep.common.reeb_graph import ReebGraph
from reebsweep.run_config import INPUT_FORMATS, OUTPUT_FORMATS, RunConfig, direction_to_str, parse_direction

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_VERIFICATION_FAILED = 3
EXIT_DIMENSION_MISMATCH = 4

logger = logging.getLogger(__name__)


def load_run_config(config_name: str) -> RunConfig:
    """Instantiate a RunConfig from a YAML file under `reebsweep/configs/`."""
    with hydra.initialize_config_module(config_module="reebsweep.configs", version_base=None):
        # config is relative to the `reebsweep` module
        cfg = hydra.compose(config_name=config_name)
        return instantiate(cfg.RunConfig, _convert_="all")


def write_outputs(graph: ReebGraph, config: RunConfig) -> None:
    """Write the graph as JSON and/or DOT, to `config.out_path` or to stdout."""
    texts = []
    if config.output_format in ("json", "both"):
        texts.append(("json", graph.to_json()))
    if config.output_format in ("dot", "both"):
        texts.append(("dot", graph.to_dot()))

    for suffix, text in texts:
        if config.out_path is None:
            click.echo(text)
            continue
        fpath = f"{config.out_path}.{suffix}" if config.output_format == "both" else config.out_path
        with open(fpath, "w") as f:
            f.write(text + "\n")
        logger.info("Wrote %s to %s", suffix.upper(), fpath)


def summary_line(num_points: int, num_pairs: int, graph: ReebGraph) -> str:
    b0, b1 = graph.betti()
    return f"n={num_points} t={num_pairs} cells={graph.num_cells} b0={b0} b1={b1}"


def verify(
    config: RunConfig,
    ball_intervals: List[LabeledInterval],
    pair_intervals: List[LabeledInterval],
    graph: ReebGraph,
    report: Dict[str, Any],
) -> int:
    """Compare against the brute-force graph and collect snapshot failures into `report`. Returns the exit code."""
    exit_code = EXIT_OK
    if config.oracle_check:
        mismatch = compare_graphs(naive_reeb(ball_intervals, pair_intervals), graph)
        report["oracle"] = {"passed": mismatch is None, "mismatch": None if mismatch is None else str(mismatch)}
        if mismatch is not None:
            click.echo(f"Oracle mismatch: {mismatch}", err=True)
            exit_code = EXIT_VERIFICATION_FAILED
    if "snapshots" in report and not report["snapshots"]["passed"]:
        first = report["snapshots"]["failures"][0]
        click.echo(f"Snapshot check failed after event {first['num_events']}: clauses {first['clauses']}", err=True)
        exit_code = EXIT_VERIFICATION_FAILED
    return exit_code


def run(config: RunConfig) -> int:
    """Run the pipeline and return the process exit code."""
    report: Dict[str, Any] = {}
    try:
        config.validate()
        points = io_utils.load_point_cloud(config.input_path, config.input_format)
        num_points, dim = points.shape

        if num_points == 0:
            if config.direction is not None:
                config.functional(len(config.direction))
            ball_intervals: List[LabeledInterval] = []
            pair_intervals: List[LabeledInterval] = []
            graph = ReebGraph.empty()
            state: Optional[SweepState] = None
        else:
            f = config.functional(dim)
            logger.info("f = %s, eps = %g", direction_to_str(f.gradient), config.eps)
            ball_intervals, pair_intervals = build_inputs(points, config.eps, f)

            snapshot_failures: List[StateCheckReport] = []

            def check_snapshot(sweep_state: SweepState, processed: List[LabeledInterval]) -> None:
                state_report = check_state(sweep_state, processed)
                if not state_report.passed:
                    snapshot_failures.append(state_report)

            state = sweep(
                ball_intervals,
                pair_intervals,
                check_claims=config.check_claims,
                snapshot_callback=check_snapshot if config.snapshot_checks else None,
            )
            graph = extract(state)
            if config.snapshot_checks:
                report["snapshots"] = {
                    "passed": len(snapshot_failures) == 0,
                    "failures": [failure.to_dict() for failure in snapshot_failures],
                }
    except DimensionMismatchError as e:
        click.echo(f"Dimension mismatch: {e}", err=True)
        return EXIT_DIMENSION_MISMATCH
    except (InputError, OSError) as e:
        click.echo(f"Invalid input: {e}", err=True)
        return EXIT_INPUT_ERROR
    except (ContractViolationError, InvariantViolationError) as e:
        click.echo(f"Sweep invariant violated: {e}", err=True)
        return EXIT_VERIFICATION_FAILED

    write_outputs(graph, config)
    click.echo(summary_line(len(ball_intervals), len(pair_intervals), graph), err=True)
    click.echo("critical values: " + " ".join(f"{x:g}" for x in graph.critical_values), err=True)

    logger.debug("Reeb graph cells:\n%s", graph.summary())

    exit_code = verify(config, ball_intervals, pair_intervals, graph, report) if config.verifies else EXIT_OK

    if config.report_path is not None:
        if state is not None:
            report["counters"] = state.counters.as_dict()
        report["summary"] = summary_line(len(ball_intervals), len(pair_intervals), graph)
        io_utils.save_json_file(config.report_path, report)
    return exit_code


@click.command(help="Compute the Reeb graph of the union of eps-balls around a point cloud, under an affine function.")
@click.argument("input_path", type=click.Path(dir_okay=False), required=False)
@click.option("--eps", type=float, default=None, help="Ball radius (positive).")
@click.option("--direction", type=str, default=None, help="Comma-separated gradient of f, e.g. `0,1`. Defaults to the last axis.")
@click.option("--offset", type=float, default=None, help="Offset of f.")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(OUTPUT_FORMATS),
    default=None,
    help="Output format. `both` writes OUT.json and OUT.dot.",
)
@click.option("--out", "out_path", type=str, default=None, help="Output file (stdout if omitted).")
@click.option("--input-format", type=click.Choice(INPUT_FORMATS), default=None, help="Input format (default: from suffix).")
@click.option("--allow-constant/--no-allow-constant", default=False, help="Accept the constant function (zero direction).")
@click.option("--oracle-check/--no-oracle-check", default=False, help="Verify the result against the brute-force Reeb graph.")
@click.option("--snapshots/--no-snapshots", "snapshot_checks", default=False, help="Verify the sweep state after every event.")
@click.option("--check-claims/--no-check-claims", default=False, help="Assert the per-event bounds during the sweep.")
@click.option("--report", "report_path", type=str, default=None, help="JSON file receiving the verification report.")
@click.option(
    "--config_name",
    type=str,
    default=None,
    help="File name of config file under `reebsweep/configs/*` (not file path!). Command-line options override it.",
)
@click.pass_context
def main(ctx: click.Context, config_name: Optional[str], direction: Optional[str], **options: Any) -> None:
    """Click entry point for a single run."""
    logger_utils.get_logger()
    config = load_run_config(config_name) if config_name is not None else RunConfig()

    # Options not given on the command line keep the values of the config file.
    overrides = {
        key: value for key, value in options.items() if ctx.get_parameter_source(key) is not ParameterSource.DEFAULT
    }
    try:
        parsed_direction = parse_direction(direction)
    except InputError as e:
        click.echo(f"Invalid input: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    if parsed_direction is not None:
        overrides["direction"] = parsed_direction
    config = dataclasses.replace(config, **overrides)

    sys.exit(run(config))


if __name__ == "__main__":
    main()
