"""Reeb graphs of thickened samples versus the Reeb graphs of the sampled shapes.

The distance between the two Reeb graphs is bounded by k(eps + delta) whenever the sample is dense enough, not too
noisy and the shape has positive reach. The interleaving distance itself is not computed; instead each experiment
checks two of its consequences: Betti numbers agree, and after pruning branches shorter than 2k(eps + delta), every
critical value of the computed graph lies within k(eps + delta) of a critical value or of the extent of the shape.
"""

import logging
import math
import os
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import pandas as pd
from tqdm import tqdm

import reebsweep.utils.io as io_utils
from reebsweep.algorithms.ball_intervals import build_inputs
from reebsweep.algorithms.reeb_extraction import extract
from reebsweep.algorithms.sweep import sweep
from reebsweep.common.affine_functional import AffineFunctional
from reebsweep.common.reeb_graph import ReebGraph
from reebsweep.experiments.shape_sampler import ShapeSampler

logger = logging.getLogger(__name__)

_PathLike = Union[str, "os.PathLike[str]"]

# Slack for comparing displacements against the bound, absorbing rounding of the interval endpoints.
DISPLACEMENT_TOL = 1e-9
# Largest reach factor used when searching for the auxiliary radius beta < reach.
REACH_SHRINK = 1.0 - 1e-9


@dataclass(frozen=True)
class ExperimentConfig:
    """One approximation experiment.

    Attributes:
        sampler: shape sampler.
        eps: ball radius.
        direction: gradient of the affine functional.
        offset: offset of the affine functional.
        name: label used in reports and file names.
    """

    sampler: ShapeSampler
    eps: float
    direction: Tuple[float, ...] = (0.0, 1.0)
    offset: float = 0.0
    name: str = ""

    def functional(self) -> AffineFunctional:
        return AffineFunctional(list(self.direction), self.offset)


@dataclass(frozen=True)
class ExperimentReport:
    """Computed versus ground-truth invariants of one experiment.

    Attributes:
        name: experiment label.
        shape: shape id of the sampler.
        seed: sampler seed; every field below is recomputable from it.
        num_points: number of samples n.
        num_pairs: number of intersecting pairs t.
        eps: ball radius.
        noise: sample noise delta.
        lipschitz: k, the norm of the functional's gradient.
        bound: k(eps + delta).
        covering_radius: largest distance from the shape to the samples.
        hypotheses_met: whether reach, covering and noise satisfy the reconstruction assumptions.
        gt_b0: ground-truth number of components.
        gt_b1: ground-truth number of cycles.
        gt_critical_values: ground-truth critical values.
        b0: computed number of components.
        b1: computed number of cycles.
        critical_values: critical values of the computed graph after pruning short branches.
        value_range: lowest and highest critical value of the unpruned graph, empty for an empty graph.
        max_displacement: largest distance from a computed critical value to the nearest ground-truth level.
        passed: verdict, or None when the hypotheses are unmet.
    """

    name: str
    shape: str
    seed: int
    num_points: int
    num_pairs: int
    eps: float
    noise: float
    lipschitz: float
    bound: float
    covering_radius: float
    hypotheses_met: bool
    gt_b0: int
    gt_b1: int
    gt_critical_values: List[float] = field(default_factory=list)
    b0: int = 0
    b1: int = 0
    critical_values: List[float] = field(default_factory=list)
    value_range: List[float] = field(default_factory=list)
    max_displacement: float = math.nan
    passed: Optional[bool] = None

    def __repr__(self) -> str:
        """Concise summary of the class as a string."""
        verdict = "hypotheses unmet" if self.passed is None else ("pass" if self.passed else "FAIL")
        summary_str = f"{self.name or self.shape}: (b0,b1)=({self.b0},{self.b1}) vs ({self.gt_b0},{self.gt_b1}), "
        summary_str += f"max displacement {self.max_displacement:.4f} vs bound {self.bound:.4f}, {verdict}"
        return summary_str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def save_as_json(self, save_fpath: _PathLike) -> None:
        io_utils.save_json_file(save_fpath, self.to_dict())


def sampling_hypotheses_met(eps: float, noise: float, covering_radius: float, reach: float) -> bool:
    """Check the sampling assumptions for reconstructing a known shape X.

    Needs 0 <= delta < beta < reach and X^alpha inside A^eps with eps <= sqrt((beta - delta)^2 - (beta - alpha)^2).
    The covering radius c gives X^alpha inside A^eps for alpha = eps - c, and the right-hand side grows with beta,
    so beta is taken just below the reach.
    """
    alpha = eps - covering_radius
    if alpha <= 0 or reach <= 0:
        return False
    if math.isinf(reach):
        return alpha > noise

    beta = reach * REACH_SHRINK
    if not noise < beta:
        return False
    slack = (beta - noise) ** 2 - (beta - alpha) ** 2
    return slack >= 0 and eps <= math.sqrt(slack)


def prune_short_branches(graph: nx.Graph, min_height: float) -> nx.Graph:
    """Repeatedly remove leaf branches spanning less than `min_height` in function value.

    A branch is a chain of degree-two vertices hanging off a vertex of degree three or more. Components that are
    paths are never removed.

    Args:
        graph: graph from `ReebGraph.to_networkx`, with `extent` and `cell_index` node attributes.
        min_height: branches whose function range is shorter than this are removed.

    Returns:
        Pruned copy of the graph.
    """
    G = graph.copy()
    changed = True
    while changed:
        changed = False
        for leaf in sorted(v for v in G.nodes if G.degree[v] == 1):
            if leaf not in G or G.degree[leaf] != 1:
                continue
            chain, junction = _leaf_chain(G, leaf)
            if junction is None:
                continue
            lo = min(G.nodes[v]["extent"][0] for v in chain)
            hi = max(G.nodes[v]["extent"][1] for v in chain)
            if hi - lo < min_height:
                G.remove_nodes_from(chain)
                changed = True
    return G


def _leaf_chain(G: nx.Graph, leaf: int) -> Tuple[List[int], Optional[int]]:
    chain = [leaf]
    prev, cur = None, leaf
    while True:
        (nxt,) = [u for u in G.neighbors(cur) if u != prev]
        if G.degree[nxt] == 2:
            chain.append(nxt)
            prev, cur = cur, nxt
        elif G.degree[nxt] == 1:
            return chain, None
        else:
            return chain, nxt


def branch_levels(G: nx.Graph) -> List[float]:
    """Levels of births, deaths, merges and splits of a Reeb graph given as networkx graph."""
    levels = set()
    for v, data in G.nodes(data=True):
        lo, hi = data["extent"]
        cell = data["cell_index"]
        down = [u for u in G.neighbors(v) if G.nodes[u]["cell_index"] < cell]
        up = [u for u in G.neighbors(v) if G.nodes[u]["cell_index"] > cell]
        if len(down) != 1:
            levels.add(lo)
        if len(up) != 1:
            levels.add(hi)
    return sorted(levels)


def max_displacement(computed: Sequence[float], targets: Sequence[float]) -> float:
    """Largest distance from a computed level to its nearest target level (zero if nothing was computed)."""
    if len(computed) == 0:
        return 0.0
    return max(min(abs(x - y) for y in targets) for x in computed)


def run_experiment(sampler: ShapeSampler, eps: float, f: AffineFunctional, name: str = "") -> ExperimentReport:
    """Sample the shape, compute the Reeb graph of the eps-thickening and compare it against the shape's.

    Returns:
        Report; if the sampling assumptions fail the report carries no verdict.
    """
    points = sampler.sample()
    ball_intervals, pair_intervals = build_inputs(points, eps, f)
    graph: ReebGraph = extract(sweep(ball_intervals, pair_intervals))
    b0, b1 = graph.betti()

    k = f.lipschitz_constant
    bound = k * (eps + sampler.noise)
    covering_radius = sampler.covering_radius(points)
    hypotheses_met = sampling_hypotheses_met(eps, sampler.noise, covering_radius, sampler.reach)
    truth = sampler.ground_truth(f)

    pruned = prune_short_branches(graph.to_networkx(), min_height=2 * bound)
    critical_values = branch_levels(pruned)
    displacement = max_displacement(critical_values, list(truth.critical_values) + list(truth.extent))

    passed: Optional[bool] = None
    if hypotheses_met:
        passed = b0 == truth.b0 and b1 == truth.b1 and displacement <= bound + DISPLACEMENT_TOL
    else:
        logger.warning("Experiment %s: sampling hypotheses unmet (covering radius %.4f).", name or sampler.shape, covering_radius)

    report = ExperimentReport(
        name=name,
        shape=sampler.shape,
        seed=sampler.seed,
        num_points=len(points),
        num_pairs=len(pair_intervals),
        eps=eps,
        noise=sampler.noise,
        lipschitz=k,
        bound=bound,
        covering_radius=covering_radius,
        hypotheses_met=hypotheses_met,
        gt_b0=truth.b0,
        gt_b1=truth.b1,
        gt_critical_values=list(truth.critical_values),
        b0=b0,
        b1=b1,
        critical_values=critical_values,
        value_range=[graph.critical_values[0], graph.critical_values[-1]] if graph.critical_values else [],
        max_displacement=displacement,
        passed=passed,
    )
    logger.info("%r", report)
    return report


def _run_config(config: ExperimentConfig) -> ExperimentReport:
    return run_experiment(config.sampler, config.eps, config.functional(), name=config.name)


def run_suite(configs: Sequence[ExperimentConfig], num_processes: int = 1) -> List[ExperimentReport]:
    """Run independent experiments, optionally across processes. Reports keep the order of `configs`."""
    if num_processes > 1:
        with Pool(num_processes) as p:
            return p.map(_run_config, configs)
    return [_run_config(config) for config in tqdm(configs)]


def summary_table(reports: Sequence[ExperimentReport]) -> pd.DataFrame:
    """One row per experiment with the quantities compared."""
    rows = [
        {
            "name": r.name or r.shape,
            "n": r.num_points,
            "t": r.num_pairs,
            "eps": r.eps,
            "noise": r.noise,
            "b0": r.b0,
            "b1": r.b1,
            "gt_b0": r.gt_b0,
            "gt_b1": r.gt_b1,
            "max_displacement": r.max_displacement,
            "bound": r.bound,
            "hypotheses_met": r.hypotheses_met,
            "passed": r.passed,
        }
        for r in reports
    ]
    return pd.DataFrame(rows)
