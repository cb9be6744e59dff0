"""Noisy samples of known planar shapes, with the Reeb graph invariants of each shape computed analytically."""

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import networkx as nx
import numpy as np
from scipy.spatial import cKDTree

from reebsweep.common.affine_functional import AffineFunctional
from reebsweep.common.errors import InputError

SHAPE_CIRCLE = "circle"
SHAPE_ANNULUS = "annulus"
SHAPE_TWO_CLUSTERS = "two-clusters"
SHAPE_FIGURE_EIGHT = "figure-eight"
SHAPES = (SHAPE_CIRCLE, SHAPE_ANNULUS, SHAPE_TWO_CLUSTERS, SHAPE_FIGURE_EIGHT)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

# Probe density used for the covering check.
NUM_PROBES_PER_UNIT_LENGTH = 400


class GroundTruth(NamedTuple):
    """Invariants of Rb(X, f) for the exact shape X.

    Attributes:
        b0: number of connected components.
        b1: number of independent cycles.
        critical_values: sorted levels at which the level set of X changes its topology.
        extent: (min f, max f) over X.
    """

    b0: int
    b1: int
    critical_values: List[float]
    extent: Tuple[float, float]


@dataclass(frozen=True)
class ShapeSampler:
    """Deterministic noisy sampler of a planar shape.

    Attributes:
        shape: one of `circle`, `annulus`, `two-clusters`, `figure-eight`.
        num_samples: for circle and figure-eight the total count, per ring for the annulus, per disc for two-clusters.
        noise: amplitude delta; every sample lies within delta of the shape.
        seed: seeds the rotation phase and the noise.
        radius: circle radius, inner annulus radius, or disc radius.
        width: radial width of the annulus.
        num_rings: number of concentric sampled rings of the annulus.
        separation: distance between the two disc centers.
        side: half-width of each diamond of the figure-eight (diamonds have vertical extent 2 * side).
    """

    shape: str
    num_samples: int
    noise: float = 0.0
    seed: int = 0
    radius: float = 1.0
    width: float = 0.4
    num_rings: int = 3
    separation: float = 2.0
    side: float = 1.0

    def __post_init__(self) -> None:
        if self.shape not in SHAPES:
            raise InputError(f"Unknown shape `{self.shape}`, expected one of {SHAPES}.")
        if self.num_samples < 1:
            raise InputError("`num_samples` must be positive.")
        if self.noise < 0:
            raise InputError("`noise` must be non-negative.")
        if self.shape == SHAPE_ANNULUS and (self.width <= 0 or self.num_rings < 2):
            raise InputError("An annulus needs a positive width and at least two rings.")
        if self.shape == SHAPE_TWO_CLUSTERS and self.separation <= 2 * self.radius:
            raise InputError("The two discs must be disjoint: `separation` must exceed twice the radius.")

    @property
    def reach(self) -> float:
        """Reach of the exact shape (zero for the figure-eight polyline, infinite for convex discs)."""
        if self.shape in (SHAPE_CIRCLE, SHAPE_ANNULUS):
            return self.radius
        if self.shape == SHAPE_TWO_CLUSTERS:
            return math.inf
        return 0.0

    def sample(self) -> np.ndarray:
        """Return an (N,2) array of samples, each within `noise` of the shape."""
        rng = np.random.default_rng(self.seed)
        phase = rng.uniform(0.0, 2 * math.pi)

        if self.shape == SHAPE_CIRCLE:
            points = _ring(self.radius, self.num_samples, phase)
        elif self.shape == SHAPE_ANNULUS:
            radii = np.linspace(self.radius, self.radius + self.width, self.num_rings)
            points = np.vstack([_ring(r, self.num_samples, phase + i * math.pi / self.num_samples) for i, r in enumerate(radii)])
        elif self.shape == SHAPE_TWO_CLUSTERS:
            points = np.vstack([_sunflower(c, self.radius, self.num_samples, phase) for c in self._disc_centers()])
        else:
            points = _sample_polyline(self._polyline_vertices(), _FIGURE_EIGHT_EDGES, self.num_samples)

        return points + _noise_in_disc(rng, len(points), self.noise)

    def probe_points(self) -> np.ndarray:
        """Dense points of the exact shape, used to estimate how well the samples cover it."""
        if self.shape == SHAPE_CIRCLE:
            num = max(64, int(2 * math.pi * self.radius * NUM_PROBES_PER_UNIT_LENGTH))
            return _ring(self.radius, num, 0.0)
        if self.shape == SHAPE_ANNULUS:
            outer = self.radius + self.width
            num = max(64, int(2 * math.pi * outer * NUM_PROBES_PER_UNIT_LENGTH))
            num_radii = max(2, int(self.width * NUM_PROBES_PER_UNIT_LENGTH / 10))
            return np.vstack([_ring(r, num, 0.0) for r in np.linspace(self.radius, outer, num_radii)])
        if self.shape == SHAPE_TWO_CLUSTERS:
            num = max(256, int(math.pi * self.radius**2 * NUM_PROBES_PER_UNIT_LENGTH**2 / 100))
            boundary = max(64, int(2 * math.pi * self.radius * NUM_PROBES_PER_UNIT_LENGTH))
            return np.vstack(
                [_sunflower(c, self.radius, num, 0.0) for c in self._disc_centers()]
                + [_ring(self.radius, boundary, 0.0) + c for c in self._disc_centers()]
            )
        total_length = len(_FIGURE_EIGHT_EDGES) * self.side * math.sqrt(2)
        num = max(64, int(total_length * NUM_PROBES_PER_UNIT_LENGTH))
        return _sample_polyline(self._polyline_vertices(), _FIGURE_EIGHT_EDGES, num)

    def covering_radius(self, samples: np.ndarray) -> float:
        """Largest distance from a probe point of the shape to its nearest sample."""
        distances, _ = cKDTree(samples).query(self.probe_points())
        return float(np.max(distances))

    def ground_truth(self, f: AffineFunctional) -> GroundTruth:
        """Betti numbers, critical values and extent of Rb(X, f) for the exact shape X."""
        k = f.lipschitz_constant
        if self.shape == SHAPE_CIRCLE:
            center = f(np.zeros(2))
            values = [center - self.radius * k, center + self.radius * k]
            return GroundTruth(b0=1, b1=1, critical_values=sorted(set(values)), extent=(min(values), max(values)))

        if self.shape == SHAPE_ANNULUS:
            center = f(np.zeros(2))
            outer = self.radius + self.width
            values = [center + sign * r * k for r in (self.radius, outer) for sign in (-1, 1)]
            return GroundTruth(b0=1, b1=1, critical_values=sorted(set(values)), extent=(center - outer * k, center + outer * k))

        if self.shape == SHAPE_TWO_CLUSTERS:
            values = [f(c) + sign * self.radius * k for c in self._disc_centers() for sign in (-1, 1)]
            return GroundTruth(b0=2, b1=0, critical_values=sorted(set(values)), extent=(min(values), max(values)))

        return _polyline_ground_truth(self._polyline_vertices(), _FIGURE_EIGHT_EDGES, f)

    def _disc_centers(self) -> List[np.ndarray]:
        half = self.separation / 2.0
        return [np.array([-half, 0.0]), np.array([half, 0.0])]

    def _polyline_vertices(self) -> np.ndarray:
        s = self.side
        return np.array([[0, 0], [s, s], [0, 2 * s], [-s, s], [s, 3 * s], [0, 4 * s], [-s, 3 * s]], dtype=float)


# Two diamonds sharing the vertex 2.
_FIGURE_EIGHT_EDGES = [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 2)]


def _ring(radius: float, num: int, phase: float) -> np.ndarray:
    angles = phase + 2 * math.pi * np.arange(num) / num
    return radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)


def _sunflower(center: np.ndarray, radius: float, num: int, phase: float) -> np.ndarray:
    """Evenly spread points of a disc, along the golden-angle spiral."""
    idx = np.arange(1, num + 1)
    radii = radius * np.sqrt((idx - 0.5) / num)
    angles = phase + idx * GOLDEN_ANGLE
    return center + np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=1)


def _sample_polyline(vertices: np.ndarray, edges: List[Tuple[int, int]], num: int) -> np.ndarray:
    """Evenly spaced points along every edge, each vertex included exactly once."""
    per_edge = max(1, math.ceil(num / len(edges)))
    points = [vertices]
    for i, j in edges:
        t = (np.arange(1, per_edge) / per_edge)[:, None]
        points.append((1 - t) * vertices[i] + t * vertices[j])
    return np.vstack(points)


def _noise_in_disc(rng: np.random.Generator, num: int, amplitude: float) -> np.ndarray:
    """Uniform offsets in the disc of radius `amplitude`."""
    if amplitude == 0 or num == 0:
        return np.zeros((num, 2))
    angles = rng.uniform(0.0, 2 * math.pi, size=num)
    radii = amplitude * np.sqrt(rng.uniform(0.0, 1.0, size=num))
    return np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=1)


def _polyline_ground_truth(vertices: np.ndarray, edges: List[Tuple[int, int]], f: AffineFunctional) -> GroundTruth:
    """A polyline vertex is regular iff it has exactly one neighbor strictly below and one strictly above.

    Betti numbers are those of the polyline graph, which has the same cycles as its Reeb graph when no edge is a
    level segment of f.
    """
    G = nx.Graph(edges)
    values = f(vertices)
    critical = []
    for v in G.nodes:
        below = sum(values[u] < values[v] for u in G.neighbors(v))
        above = sum(values[u] > values[v] for u in G.neighbors(v))
        if not (G.degree[v] == 2 and below == 1 and above == 1):
            critical.append(float(values[v]))

    b0 = nx.number_connected_components(G)
    b1 = G.number_of_edges() - G.number_of_nodes() + b0
    return GroundTruth(
        b0=b0,
        b1=b1,
        critical_values=sorted(set(critical)),
        extent=(float(np.min(values)), float(np.max(values))),
    )
