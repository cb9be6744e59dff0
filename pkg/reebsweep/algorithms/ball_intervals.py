"""Interval inputs of the sweep: images of balls and of pairwise ball intersections under an affine functional.

The image of B_eps(p) under f(x) = w.x + b is [f(p) - eps|w|, f(p) + eps|w|]. For the lens
B_eps(p) \\cap B_eps(q), the maximizer of f is either the extremal point p + eps w/|w| of one ball, if it lies in
the other ball, or a point of the (d-2)-sphere where both ball boundaries meet. That sphere is centered at
c = (p+q)/2 with radius rho = sqrt(eps^2 - |q-p|^2/4) inside the hyperplane orthogonal to q-p, so the maximum
there is f(c) + rho |w_perp|, where w_perp is the component of w orthogonal to q-p. The minimum is symmetric.
"""

import logging
import math
from typing import List, Optional, Set, Tuple

import numpy as np
from scipy.spatial import cKDTree

import reebsweep.utils.graph_utils as graph_utils
from reebsweep.common.affine_functional import AffineFunctional
from reebsweep.common.errors import ContractViolationError, InputError
from reebsweep.common.labeled_interval import BallLabel, LabeledInterval, PairLabel
from reebsweep.common.point_cloud import Point, PointsLike, as_array, as_point_list, find_duplicate_groups

logger = logging.getLogger(__name__)

# Relative slack of the vectorized pre-filter. The exact decision is taken per pair in `pair_interval`.
PREFILTER_SLACK = 1e-9


def _check_eps(eps: float) -> None:
    if not (math.isfinite(eps) and eps > 0):
        raise InputError(f"Radius eps must be a positive finite number, got {eps}.")


def ball_interval(p: Point, eps: float, f: AffineFunctional) -> LabeledInterval:
    """Compute I_p = f(B_eps(p)).

    Args:
        p: center of the ball.
        eps: radius, > 0.
        f: affine functional. A constant functional collapses the interval to [b,b].

    Returns:
        Interval [f(p) - eps|w|, f(p) + eps|w|] labeled by p.
    """
    _check_eps(eps)
    f.check_dimension(p.dim)
    if f.is_constant:
        return LabeledInterval(f.offset, f.offset, BallLabel(p.id))

    fp = f(p.coords)
    half_width = eps * f.lipschitz_constant
    return LabeledInterval(fp - half_width, fp + half_width, BallLabel(p.id))


def _lens_max(p: np.ndarray, q: np.ndarray, fp: float, fq: float, eps: float, w: np.ndarray, b: float) -> float:
    """Maximum of f(x) = w.x + b over B_eps(p) \\cap B_eps(q), assuming the lens is nonempty and w != 0."""
    norm_w = float(np.linalg.norm(w))
    direction = w / norm_w
    eps_sq = eps * eps

    # Extremal point of one ball lies inside the other ball.
    cap_p = p + eps * direction
    if np.sum((cap_p - q) ** 2) <= eps_sq:
        return fp + eps * norm_w
    cap_q = q + eps * direction
    if np.sum((cap_q - p) ** 2) <= eps_sq:
        return fq + eps * norm_w

    # Otherwise the maximizer lies on the sphere where the two ball boundaries meet.
    diff = q - p
    dist_sq = float(np.sum(diff**2))
    rho = math.sqrt(max(eps_sq - dist_sq / 4.0, 0.0))
    center = (p + q) / 2.0
    w_perp = w - (float(w @ diff) / dist_sq) * diff
    w_perp_norm = float(np.linalg.norm(w_perp))
    f_center = float(center @ w) + b
    if w_perp_norm == 0.0:
        # w parallel to q-p.
        return f_center
    return f_center + rho * w_perp_norm


def pair_interval(p: Point, q: Point, eps: float, f: AffineFunctional) -> Optional[LabeledInterval]:
    """Compute I_{p,q} = f(B_eps(p) \\cap B_eps(q)) in closed form, or None if the balls do not meet.

    Tangent balls (|p-q| = 2 eps exactly, compared on squared distances) give a single-point interval. The result is
    clamped to I_p \\cap I_q, so containment in both ball intervals holds exactly in floating point; if rounding at
    tangency leaves nothing after clamping, the pair is treated as disjoint.

    Raises:
        ContractViolationError: if p and q have identical ids or coordinates.
    """
    _check_eps(eps)
    if p.id == q.id:
        raise ContractViolationError(f"pair_interval requires two distinct points, got id {p.id} twice.")
    if np.array_equal(p.coords, q.coords):
        raise ContractViolationError(f"Points {p.id} and {q.id} coincide; deduplicate the input first.")

    diff = q.coords - p.coords
    if float(np.sum(diff**2)) > 4.0 * eps * eps:
        return None

    label = PairLabel.unordered(p.id, q.id)
    if f.is_constant:
        return LabeledInterval(f.offset, f.offset, label)

    I_p = ball_interval(p, eps, f)
    I_q = ball_interval(q, eps, f)
    fp = f(p.coords)
    fq = f(q.coords)
    w = f.gradient

    hi = _lens_max(p.coords, q.coords, fp, fq, eps, w, f.offset)
    # Minimum of f is minus the maximum of -f.
    lo = -_lens_max(p.coords, q.coords, -fp, -fq, eps, -w, -f.offset)

    lo = max(lo, I_p.lo, I_q.lo)
    hi = min(hi, I_p.hi, I_q.hi)
    if lo > hi:
        logger.debug("Dropping pair %s: lens extent vanished after clamping to I_p and I_q.", label)
        return None
    return LabeledInterval(lo, hi, label)


def build_inputs(
    points: PointsLike, eps: float, f: AffineFunctional
) -> Tuple[List[LabeledInterval], List[LabeledInterval]]:
    """Compute all ball intervals and all nonempty pair intervals, running over all points and pairs of points.

    Args:
        points: list of points with ids 0..n-1, or an (n,d) array.
        eps: ball radius.
        f: affine functional of matching dimension.

    Returns:
        ball_intervals: one interval per point, ordered by id.
        pair_intervals: one interval per unordered pair whose balls meet, in lexicographic (p,q) order.

    Raises:
        InputError: on duplicate points (the message lists them), or a dimension mismatch.
    """
    _check_eps(eps)
    point_list = as_point_list(points)
    if len(point_list) == 0:
        return [], []

    f.check_dimension(point_list[0].dim)
    duplicates = find_duplicate_groups(point_list)
    if len(duplicates) > 0:
        raise InputError(f"Duplicate points (by id): {duplicates}")

    ball_intervals = [ball_interval(p, eps, f) for p in point_list]

    coords = as_array(point_list)
    dist_sq = np.sum((coords[:, None, :] - coords[None, :, :]) ** 2, axis=-1)
    candidates = np.argwhere(np.triu(dist_sq <= 4.0 * eps * eps * (1 + PREFILTER_SLACK), k=1))

    pair_intervals = []
    for i, j in candidates:
        interval = pair_interval(point_list[i], point_list[j], eps, f)
        if interval is not None:
            pair_intervals.append(interval)

    logger.info("Built %d ball intervals and %d pair intervals (eps=%g).", len(ball_intervals), len(pair_intervals), eps)
    return ball_intervals, pair_intervals


def ball_intersection_graph_components(points: PointsLike, eps: float) -> List[Set[int]]:
    """Connected components of the graph on A with an edge whenever two eps-balls meet (|p-q| <= 2 eps).

    Independent of the sweep: candidate pairs come from a KD-tree range query and components from networkx.
    """
    _check_eps(eps)
    point_list = as_point_list(points)
    if len(point_list) == 0:
        return []

    coords = np.stack([p.coords for p in point_list])
    tree = cKDTree(coords)
    edges = tree.query_pairs(r=2.0 * eps, output_type="set")
    return graph_utils.find_connected_components(nodes=range(len(point_list)), edges=edges)
