"""Tests of the command-line entry point: outputs, summaries and exit codes."""

import shutil
from pathlib import Path

from click.testing import CliRunner

import reebsweep.cli as cli
import reebsweep.utils.io as io_utils
from reebsweep.algorithms.naive_reeb import CLAUSE_PARTITIONS, ClauseFailure, StateCheckReport
from reebsweep.common.errors import ContractViolationError, InvariantViolationError
from reebsweep.common.reeb_graph import ReebGraph
from reebsweep.run_config import RunConfig

TEST_DATA_ROOT = Path(__file__).resolve().parent / "test_data"
FOUR_POINTS_FPATH = str(TEST_DATA_ROOT / "four_points.csv")

GOLDEN_SUMMARY = "n=4 t=5 cells=13 b0=1 b1=1"


def _invoke(*args: str):
    return CliRunner().invoke(cli.main, list(args))


def test_four_points_json(tmp_path: Path) -> None:
    """The four-disc example gives the golden summary and a graph with 15 vertices and 15 edges."""
    out_fpath = tmp_path / "reeb.json"
    result = _invoke(FOUR_POINTS_FPATH, "--eps", "1", "--direction", "0,1", "--out", str(out_fpath))
    assert result.exit_code == cli.EXIT_OK, result.output
    assert GOLDEN_SUMMARY in result.output
    assert "critical values: -1.4 0 " in result.output

    graph = ReebGraph.from_json_file(out_fpath)
    assert graph.num_cells == 13
    assert graph.num_vertices == 15
    assert graph.num_edges == 15
    assert len(io_utils.read_json_file(out_fpath)["critical_values"]) == 12


def test_default_direction_is_last_axis(tmp_path: Path) -> None:
    """Without --direction, f projects onto the last coordinate."""
    default_fpath = tmp_path / "default.json"
    explicit_fpath = tmp_path / "explicit.json"
    assert _invoke(FOUR_POINTS_FPATH, "--out", str(default_fpath)).exit_code == cli.EXIT_OK
    assert _invoke(FOUR_POINTS_FPATH, "--direction", "0,1", "--out", str(explicit_fpath)).exit_code == cli.EXIT_OK
    assert default_fpath.read_text() == explicit_fpath.read_text()


def test_output_is_deterministic(tmp_path: Path) -> None:
    fpaths = [tmp_path / "first.json", tmp_path / "second.json"]
    for fpath in fpaths:
        assert _invoke(FOUR_POINTS_FPATH, "--eps", "1", "--out", str(fpath)).exit_code == cli.EXIT_OK
    assert fpaths[0].read_bytes() == fpaths[1].read_bytes()


def test_dot_output(tmp_path: Path) -> None:
    out_fpath = tmp_path / "reeb.dot"
    result = _invoke(FOUR_POINTS_FPATH, "--format", "dot", "--out", str(out_fpath))
    assert result.exit_code == cli.EXIT_OK
    dot = out_fpath.read_text()
    assert dot.count("[label=") == 15
    assert dot.count(" -> ") == 15


def test_both_outputs(tmp_path: Path) -> None:
    """`both` writes OUT.json and OUT.dot next to each other."""
    out_base = tmp_path / "reeb"
    result = _invoke(FOUR_POINTS_FPATH, "--format", "both", "--out", str(out_base))
    assert result.exit_code == cli.EXIT_OK
    assert ReebGraph.from_json_file(f"{out_base}.json").num_vertices == 15
    assert Path(f"{out_base}.dot").read_text().count(" -> ") == 15


def test_json_input(tmp_path: Path) -> None:
    """JSON point clouds are read by suffix and give the same graph as the CSV."""
    json_fpath = tmp_path / "points.json"
    json_fpath.write_text("[[0.1, 1], [1.4, -0.4], [1.9, 1.3], [0.5, 2]]")
    result = _invoke(str(json_fpath), "--out", str(tmp_path / "reeb.json"))
    assert result.exit_code == cli.EXIT_OK
    assert GOLDEN_SUMMARY in result.output


def test_empty_input(tmp_path: Path) -> None:
    """An empty file gives the empty graph."""
    empty_fpath = tmp_path / "empty.csv"
    empty_fpath.write_text("")
    out_fpath = tmp_path / "reeb.json"
    result = _invoke(str(empty_fpath), "--out", str(out_fpath))
    assert result.exit_code == cli.EXIT_OK
    assert "n=0 t=0 cells=1 b0=0 b1=0" in result.output
    assert ReebGraph.from_json_file(out_fpath) == ReebGraph.empty()


def test_constant_functional(tmp_path: Path) -> None:
    """A zero direction needs --allow-constant; the graph then has a single nonempty cell."""
    result = _invoke(FOUR_POINTS_FPATH, "--direction", "0,0", "--out", str(tmp_path / "rejected.json"))
    assert result.exit_code == cli.EXIT_INPUT_ERROR

    result = _invoke(FOUR_POINTS_FPATH, "--direction", "0,0", "--allow-constant", "--out", str(tmp_path / "reeb.json"))
    assert result.exit_code == cli.EXIT_OK, result.output
    assert "n=4 t=5 cells=3 b0=1 b1=0" in result.output


def test_input_errors(tmp_path: Path) -> None:
    """Malformed files and options exit with code 2; row errors name the row."""
    bad_row_fpath = tmp_path / "bad_row.csv"
    bad_row_fpath.write_text("x,y\n0,1\n1,oops\n")
    result = _invoke(str(bad_row_fpath))
    assert result.exit_code == cli.EXIT_INPUT_ERROR
    assert "row 3" in result.output

    duplicates_fpath = tmp_path / "duplicates.csv"
    duplicates_fpath.write_text("0,1\n2,3\n0,1\n")
    assert _invoke(str(duplicates_fpath)).exit_code == cli.EXIT_INPUT_ERROR

    assert _invoke(str(tmp_path / "missing.csv")).exit_code == cli.EXIT_INPUT_ERROR
    assert _invoke(FOUR_POINTS_FPATH, "--eps", "0").exit_code == cli.EXIT_INPUT_ERROR
    assert _invoke(FOUR_POINTS_FPATH, "--eps", "-1").exit_code == cli.EXIT_INPUT_ERROR
    assert _invoke(FOUR_POINTS_FPATH, "--direction", "a,b").exit_code == cli.EXIT_INPUT_ERROR
    assert _invoke().exit_code == cli.EXIT_INPUT_ERROR


def test_dimension_mismatch() -> None:
    result = _invoke(FOUR_POINTS_FPATH, "--direction", "0,0,1")
    assert result.exit_code == cli.EXIT_DIMENSION_MISMATCH
    assert "Dimension mismatch" in result.output


def test_verification_passes(tmp_path: Path) -> None:
    """Oracle and snapshot checks pass, and the report records them with the counters."""
    report_fpath = tmp_path / "report.json"
    result = _invoke(
        FOUR_POINTS_FPATH,
        "--oracle-check",
        "--snapshots",
        "--check-claims",
        "--out",
        str(tmp_path / "reeb.json"),
        "--report",
        str(report_fpath),
    )
    assert result.exit_code == cli.EXIT_OK, result.output

    report = io_utils.read_json_file(report_fpath)
    assert report["oracle"] == {"passed": True, "mismatch": None}
    assert report["snapshots"] == {"passed": True, "failures": []}
    assert report["counters"]["events"] == 9
    assert report["summary"] == GOLDEN_SUMMARY


def test_oracle_mismatch_exits_with_verification_failure(tmp_path: Path, monkeypatch) -> None:
    """A wrong graph is still written, but the run exits with code 3."""
    monkeypatch.setattr(cli, "extract", lambda state: ReebGraph.empty())
    out_fpath = tmp_path / "reeb.json"
    report_fpath = tmp_path / "report.json"
    result = _invoke(FOUR_POINTS_FPATH, "--oracle-check", "--out", str(out_fpath), "--report", str(report_fpath))
    assert result.exit_code == cli.EXIT_VERIFICATION_FAILED
    assert "Oracle mismatch" in result.output
    assert ReebGraph.from_json_file(out_fpath) == ReebGraph.empty()
    assert not io_utils.read_json_file(report_fpath)["oracle"]["passed"]


def test_snapshot_failure_exits_with_verification_failure(tmp_path: Path, monkeypatch) -> None:
    def failing_check(state, processed) -> StateCheckReport:
        failure = ClauseFailure(clause=CLAUSE_PARTITIONS, level=0.0, expected=[], found=[], message="injected")
        return StateCheckReport(num_events=len(processed), num_cells=state.num_cells, failures=[failure])

    monkeypatch.setattr(cli, "check_state", failing_check)
    result = _invoke(FOUR_POINTS_FPATH, "--snapshots", "--out", str(tmp_path / "reeb.json"))
    assert result.exit_code == cli.EXIT_VERIFICATION_FAILED
    assert "Snapshot check failed after event 1" in result.output


def test_config_file_with_overrides(tmp_path: Path) -> None:
    """Options from the command line override the YAML config."""
    out_fpath = tmp_path / "reeb.dot"
    result = _invoke(FOUR_POINTS_FPATH, "--config_name", "default_run.yaml", "--format", "dot", "--out", str(out_fpath))
    assert result.exit_code == cli.EXIT_OK, result.output
    assert out_fpath.read_text().startswith("digraph")


def test_stdout_output(tmp_path: Path) -> None:
    """Without --out the DOT text goes to stdout."""
    input_fpath = tmp_path / "points.csv"
    shutil.copy(FOUR_POINTS_FPATH, input_fpath)
    result = _invoke(str(input_fpath), "--format", "dot")
    assert result.exit_code == cli.EXIT_OK
    assert "digraph reeb {" in result.output


def test_no_switch_overrides_config_file(tmp_path: Path, monkeypatch) -> None:
    """A verification switch enabled in the config file can be turned off on the command line."""
    monkeypatch.setattr(cli, "load_run_config", lambda config_name: RunConfig(oracle_check=True))
    report_fpath = tmp_path / "report.json"
    out_fpath = tmp_path / "reeb.json"
    args = [FOUR_POINTS_FPATH, "--config_name", "verify.yaml", "--out", str(out_fpath), "--report", str(report_fpath)]

    result = _invoke(*args)
    assert result.exit_code == cli.EXIT_OK, result.output
    assert io_utils.read_json_file(report_fpath)["oracle"]["passed"]

    result = _invoke(*args, "--no-oracle-check")
    assert result.exit_code == cli.EXIT_OK, result.output
    assert "oracle" not in io_utils.read_json_file(report_fpath)


def test_sweep_invariant_violation_exits_with_verification_failure(tmp_path: Path, monkeypatch) -> None:
    """An invariant broken inside the sweep is reported with exit code 3 and no output."""

    def broken_sweep(*args, **kwargs):
        raise InvariantViolationError("link graph lost a root")

    monkeypatch.setattr(cli, "sweep", broken_sweep)
    out_fpath = tmp_path / "reeb.json"
    result = _invoke(FOUR_POINTS_FPATH, "--out", str(out_fpath))
    assert result.exit_code == cli.EXIT_VERIFICATION_FAILED
    assert "link graph lost a root" in result.output
    assert not out_fpath.exists()


def test_contract_violation_exits_with_verification_failure(tmp_path: Path, monkeypatch) -> None:
    def broken_extract(state):
        raise ContractViolationError("edge between non-adjacent cells")

    monkeypatch.setattr(cli, "extract", broken_extract)
    result = _invoke(FOUR_POINTS_FPATH, "--out", str(tmp_path / "reeb.json"))
    assert result.exit_code == cli.EXIT_VERIFICATION_FAILED
    assert "edge between non-adjacent cells" in result.output
