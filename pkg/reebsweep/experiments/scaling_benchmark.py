"""Empirical scaling of the sweep: union-find operation counts and wall time against n(n+t).

Every grid cell is run twice on the same instance, first with the per-event claim assertions enabled to validate
the counters, then with them disabled for timing.
"""

import logging
import math
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Any, Dict, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.special import comb, gamma
from tqdm import tqdm

from reebsweep.algorithms.ball_intervals import build_inputs
from reebsweep.algorithms.reeb_extraction import extract
from reebsweep.algorithms.sweep import sweep
from reebsweep.common.affine_functional import AffineFunctional
from reebsweep.common.errors import InputError

logger = logging.getLogger(__name__)

REGIME_SPARSE = "sparse"
REGIME_DENSE = "dense"
REGIMES = (REGIME_SPARSE, REGIME_DENSE)

# Side length of the box the points are drawn from.
BOX_SIDE = 1.0
# Radius used when an instance cannot have any pairs.
DEFAULT_EPS = 1.0
# Acceptance thresholds: largest over smallest mean operation ratio across n, and the wall-time log-log slope.
MAX_UF_RATIO_SPREAD = 3.0
TIME_SLOPE_RANGE = (0.9, 1.2)
# Counters that must not depend on whether the claims are checked.
PASS_INVARIANT_COUNTERS = ("make_set", "union", "splits", "deletes")


@dataclass(frozen=True)
class ScalingConfig:
    """Grid of a scaling benchmark.

    Attributes:
        ns: point counts n.
        regime: `sparse` targets t = 5n pairs, `dense` targets t = n^2 / 4.
        seeds: one instance per (n, seed).
        dim: ambient dimension of the points.
        check_claims: run the claim-checking pass before the timing pass.
        num_processes: grid cells are distributed over this many processes.
    """

    ns: Tuple[int, ...] = (100, 200, 400, 800)
    regime: str = REGIME_SPARSE
    seeds: Tuple[int, ...] = tuple(range(10))
    dim: int = 2
    check_claims: bool = True
    num_processes: int = 1

    def __post_init__(self) -> None:
        if self.regime not in REGIMES:
            raise InputError(f"Unknown regime `{self.regime}`, expected one of {REGIMES}.")
        if self.dim < 1:
            raise InputError("`dim` must be at least 1.")
        if any(n < 1 for n in self.ns):
            raise InputError("Every n of the grid must be positive.")

    def target_num_pairs(self, n: int) -> int:
        if self.regime == REGIME_SPARSE:
            return 5 * n
        return n * n // 4


def unit_ball_volume(dim: int) -> float:
    return math.pi ** (dim / 2) / float(gamma(dim / 2 + 1))


def eps_for_target(n: int, target_t: int, dim: int) -> float:
    """Radius at which n uniform points in the box are expected to form about `target_t` intersecting pairs.

    Two balls meet iff their centers are within 2 eps, so t ~ C(n,2) vol(B(2 eps)) / side^d, ignoring boundary
    effects. The target is clamped to the number of pairs.
    """
    num_pairs = float(comb(n, 2))
    if num_pairs == 0 or target_t <= 0:
        return DEFAULT_EPS
    fraction = min(target_t, num_pairs) / num_pairs
    diameter = BOX_SIDE * (fraction / unit_ball_volume(dim)) ** (1.0 / dim)
    return diameter / 2.0


def generate_instance(n: int, target_t: int, seed: int, dim: int = 2) -> Tuple[np.ndarray, float]:
    """Uniform points in the box, with the radius tuned towards `target_t` pairs.

    Returns:
        points: array of shape (n, dim).
        eps: ball radius.
    """
    rng = np.random.default_rng(seed)
    points = rng.uniform(0.0, BOX_SIDE, size=(n, dim))
    return points, eps_for_target(n, target_t, dim)


def run_single_instance(n: int, target_t: int, seed: int, dim: int, check_claims: bool) -> Dict[str, Any]:
    """Benchmark one instance and return one row of the results table."""
    points, eps = generate_instance(n, target_t, seed, dim)
    f = AffineFunctional.axis_projection(dim)
    ball_intervals, pair_intervals = build_inputs(points, eps, f)
    t = len(pair_intervals)

    checked_counters: Dict[str, int] = {}
    if check_claims:
        checked_counters = sweep(ball_intervals, pair_intervals, check_claims=True).counters.as_dict()

    start = time.perf_counter()
    state = sweep(ball_intervals, pair_intervals, check_claims=False)
    wall_time = time.perf_counter() - start

    counters = state.counters.as_dict()
    counters_agree = not check_claims or all(checked_counters[key] == counters[key] for key in PASS_INVARIANT_COUNTERS)
    if not counters_agree:
        logger.error("Counters differ between the checked and the timed pass (n=%d, seed=%d).", n, seed)

    work = n * (n + t)
    row: Dict[str, Any] = {"n": n, "target_t": target_t, "t": t, "seed": seed, "dim": dim, "eps": eps}
    row.update(counters)
    for key in ("max_link_edges", "max_claim3_length"):
        row[key] = checked_counters.get(key, counters[key])
    row["claims_checked"] = check_claims
    row["counters_agree"] = counters_agree
    row["wall_time"] = wall_time
    row["work"] = work
    row["uf_ratio"] = counters["uf_operations"] / work
    row["time_ratio"] = wall_time / work
    row["num_cells"] = state.num_cells
    row["description_size"] = extract(state).description_size()
    logger.info("n=%d t=%d seed=%d: %d union-find ops, %.3fs", n, t, seed, counters["uf_operations"], wall_time)
    return row


def run_scaling(config: ScalingConfig) -> pd.DataFrame:
    """Run every (n, seed) of the grid. Returns one row per instance, sorted by n then seed."""
    args = [(n, config.target_num_pairs(n), seed, config.dim, config.check_claims) for n in config.ns for seed in config.seeds]
    logger.info("Running %d scaling instances in the %s regime.", len(args), config.regime)

    if config.num_processes > 1:
        with Pool(config.num_processes) as p:
            rows = p.starmap(run_single_instance, args)
    else:
        rows = [run_single_instance(*single_call_args) for single_call_args in tqdm(args)]

    df = pd.DataFrame(rows)
    df.insert(0, "regime", config.regime)
    return df.sort_values(["n", "seed"]).reset_index(drop=True)


def fit_loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Slope of the least-squares line through (log x, log y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    valid = (x > 0) & (y > 0)
    if np.count_nonzero(valid) < 2:
        raise InputError("A log-log fit needs at least two positive samples.")
    slope, _ = np.polyfit(np.log(x[valid]), np.log(y[valid]), deg=1)
    return float(slope)


def ratio_spread(df: pd.DataFrame, column: str = "uf_ratio") -> float:
    """Largest over smallest mean of `column` across the n of the grid."""
    means = df.groupby("n")[column].mean()
    return float(means.max() / means.min())


def summarize(df: pd.DataFrame) -> Dict[str, Any]:
    """Spread of the operation ratio and wall-time slope against n(n+t), each with its pass flag.

    The run passes when the spread is at most `MAX_UF_RATIO_SPREAD`, the slope lies in `TIME_SLOPE_RANGE`, and both
    passes of every instance counted the same operations.
    """
    spread = ratio_spread(df, "uf_ratio")
    slope = fit_loglog_slope(df["work"], df["wall_time"])
    spread_passed = spread <= MAX_UF_RATIO_SPREAD
    slope_passed = TIME_SLOPE_RANGE[0] <= slope <= TIME_SLOPE_RANGE[1]
    counters_agree = bool(df["counters_agree"].all())
    return {
        "uf_ratio_max": float(df["uf_ratio"].max()),
        "uf_ratio_spread": spread,
        "uf_ratio_spread_passed": spread_passed,
        "time_slope": slope,
        "time_slope_passed": slope_passed,
        "counters_agree": counters_agree,
        "passed": spread_passed and slope_passed and counters_agree,
    }
