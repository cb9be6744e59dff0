"""Stores the options of a single command-line run."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from reebsweep.common.affine_functional import AffineFunctional
from reebsweep.common.errors import InputError

OUTPUT_FORMATS = ("json", "dot", "both")
INPUT_FORMATS = ("csv", "json")


@dataclass(frozen=False)
class RunConfig:
    """Pipeline options: point cloud -> intervals -> sweep -> Reeb graph.

    Attributes:
        input_path: CSV or JSON point cloud.
        eps: ball radius.
        direction: gradient w of f. Defaults to the last coordinate axis.
        offset: offset b of f.
        input_format: `csv` or `json`, inferred from the file suffix when unset.
        output_format: `json`, `dot` or `both`.
        out_path: output file; stdout when unset. For `both`, `{out_path}.json` and `{out_path}.dot` are written.
        allow_constant: accept the constant functional w = 0.
        oracle_check: compare the result against the brute-force Reeb graph.
        snapshot_checks: check the sweep state against brute force after every event.
        check_claims: assert the per-event claim bounds during the sweep.
        report_path: JSON file receiving the verification report.
    """

    input_path: Optional[str] = None
    eps: float = 1.0
    direction: Optional[Tuple[float, ...]] = None
    offset: float = 0.0
    input_format: Optional[str] = None
    output_format: str = "json"
    out_path: Optional[str] = None
    allow_constant: bool = False
    oracle_check: bool = False
    snapshot_checks: bool = False
    check_claims: bool = False
    report_path: Optional[str] = None

    def validate(self) -> None:
        """Raise InputError on options that no input could satisfy."""
        if self.input_path is None:
            raise InputError("No input point cloud given.")
        if not self.eps > 0:
            raise InputError(f"Radius eps must be positive, got {self.eps}.")
        if self.output_format not in OUTPUT_FORMATS:
            raise InputError(f"Unknown output format `{self.output_format}`, expected one of {OUTPUT_FORMATS}.")
        if self.input_format is not None and self.input_format not in INPUT_FORMATS:
            raise InputError(f"Unknown input format `{self.input_format}`, expected one of {INPUT_FORMATS}.")

    @property
    def verifies(self) -> bool:
        return self.oracle_check or self.snapshot_checks

    def functional(self, dim: int) -> AffineFunctional:
        """Build f for points of dimension `dim`.

        Raises:
            DimensionMismatchError: if an explicit direction has another dimension.
        """
        if self.direction is None:
            return AffineFunctional.axis_projection(dim, offset=self.offset)
        f = AffineFunctional(list(self.direction), self.offset, allow_constant=self.allow_constant)
        f.check_dimension(dim)
        return f


def parse_direction(text: Optional[str]) -> Optional[Tuple[float, ...]]:
    """Parse a comma-separated weight vector such as `0,1`."""
    if text is None or text.strip() == "":
        return None
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise InputError(f"Cannot parse direction `{text}`; expected comma-separated numbers.") from e


def direction_to_str(direction: Sequence[float]) -> str:
    return ",".join(f"{v:g}" for v in direction)
