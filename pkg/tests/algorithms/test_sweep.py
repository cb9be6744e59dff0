"""Unit tests on the sweep over ball and pair intervals."""

from pathlib import Path
from typing import List, Tuple

import numpy as np
import pytest

import reebsweep.utils.io as io_utils
from reebsweep.algorithms.ball_intervals import build_inputs
from reebsweep.algorithms.sweep import SweepState, sort_events, sweep
from reebsweep.common.affine_functional import AffineFunctional
from reebsweep.common.errors import ContractViolationError, InputError
from reebsweep.common.labeled_interval import BallLabel, LabeledInterval, PairLabel
from reebsweep.common.union_find_forest import UnionFindForest, sorted_classes
from reebsweep.experiments.scaling_benchmark import eps_for_target

TEST_DATA_ROOT = Path(__file__).resolve().parent.parent / "test_data"

# Partition of every cell after sweeping the four discs, with p=0, q=1, r=2, s=3.
EXPECTED_FOUR_POINT_PARTITIONS = [
    [],
    [[1]],
    [[0], [1]],
    [[0, 1]],
    [[0, 1, 2]],
    [[0], [1, 2]],
    [[0], [2]],
    [[0, 2]],
    [[0, 2, 3]],
    [[2, 3]],
    [[2], [3]],
    [[3]],
    [],
]
EXPECTED_FOUR_POINT_BOUNDARIES = [-1.4, 0.0, 0.0987, 0.3, 0.5013, 0.6, 0.7463, 1.0, 2.0, 2.2068, 2.3, 3.0]


def _four_point_inputs() -> Tuple[List[LabeledInterval], List[LabeledInterval]]:
    points = io_utils.load_point_cloud(TEST_DATA_ROOT / "four_points.csv")
    return build_inputs(points, 1.0, AffineFunctional([0.0, 1.0]))


def _random_inputs(seed: int, max_points: int = 20) -> Tuple[List[LabeledInterval], List[LabeledInterval]]:
    """Uniform points in the unit square, about 2n intersecting pairs, random direction."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_points + 1))
    points = rng.uniform(0, 1, size=(n, 2))
    eps = eps_for_target(n, 2 * n, 2) if n > 1 else 0.1
    f = AffineFunctional(rng.normal(size=2))
    return build_inputs(points, eps, f)


def test_sort_events_four_points() -> None:
    """Events come in the order q, p, pq, r, qr, pr, s, ps, rs."""
    ball_intervals, pair_intervals = _four_point_inputs()
    labels = [I.label for I in sort_events(ball_intervals, pair_intervals)]
    assert labels == [
        BallLabel(1),
        BallLabel(0),
        PairLabel(0, 1),
        BallLabel(2),
        PairLabel(1, 2),
        PairLabel(0, 2),
        BallLabel(3),
        PairLabel(0, 3),
        PairLabel(2, 3),
    ]


def test_sweep_four_points() -> None:
    """Thirteen cells with the expected partitions and boundaries."""
    ball_intervals, pair_intervals = _four_point_inputs()
    state = sweep(ball_intervals, pair_intervals, check_claims=True)

    assert state.num_cells == 13
    assert [sorted_classes(partition) for partition in state.partitions()] == EXPECTED_FOUR_POINT_PARTITIONS

    cells = list(state.cells())
    boundaries = [cell.hi.value for cell in cells[:-1]]
    assert np.allclose(boundaries, EXPECTED_FOUR_POINT_BOUNDARIES, atol=1e-4)

    # Cells meeting the closed ball [0, 2] of p at its right endpoint keep p.
    assert cells[8].hi.inclusive
    assert cells[1].lo.inclusive and not cells[1].hi.inclusive


def test_sweep_link_graphs_four_points() -> None:
    """Link graphs join intersecting classes of consecutive cells."""
    ball_intervals, pair_intervals = _four_point_inputs()
    state = sweep(ball_intervals, pair_intervals)
    cells = list(state.cells())
    for J, J_next in zip(cells, cells[1:]):
        assert J_next.link_pred.is_consistent()
        for s, t in J_next.link_pred.edges():
            assert J.uf.find_set(s) == s
            assert J_next.uf.find_set(t) == t
            assert not set(J.uf.classes()[s]).isdisjoint(J_next.uf.classes()[t])


def test_single_point() -> None:
    """One ball: exactly one make-set and no unions, three cells."""
    state = sweep([LabeledInterval(0.0, 1.0, BallLabel(0))], [])
    assert state.counters.make_set == 1
    assert state.counters.union == 0
    assert [sorted_classes(partition) for partition in state.partitions()] == [[], [[0]], []]


def test_empty_input() -> None:
    """Without events the partition-of-reals is the single empty cell R."""
    state = sweep([], [])
    assert state.num_cells == 1
    assert state.partitions() == [frozenset()]


def test_pairs_without_balls() -> None:
    """Pair intervals need ball intervals."""
    with pytest.raises(InputError):
        sweep([], [LabeledInterval(0.0, 1.0, PairLabel(0, 1))])


def test_pair_outside_ball_interval() -> None:
    """A pair interval sticking out of a ball interval breaks the precondition."""
    ball_intervals = [LabeledInterval(0.0, 1.0, BallLabel(0)), LabeledInterval(0.0, 2.0, BallLabel(1))]
    with pytest.raises(ContractViolationError):
        sweep(ball_intervals, [LabeledInterval(0.5, 1.5, PairLabel(0, 1))])


def test_identical_intervals_fuse() -> None:
    """Two balls with the same interval glued on all of it leave three cells."""
    ball_intervals = [LabeledInterval(0.0, 1.0, BallLabel(0)), LabeledInterval(0.0, 1.0, BallLabel(1))]
    state = sweep(ball_intervals, [LabeledInterval(0.0, 1.0, PairLabel(0, 1))])
    assert [sorted_classes(partition) for partition in state.partitions()] == [[], [[0, 1]], []]


def test_pair_covering_part_of_balls() -> None:
    """A pair interval strictly inside both ball intervals splits the common cell into three."""
    ball_intervals = [LabeledInterval(0.0, 3.0, BallLabel(0)), LabeledInterval(0.0, 3.0, BallLabel(1))]
    state = sweep(ball_intervals, [LabeledInterval(1.0, 2.0, PairLabel(0, 1))], check_claims=True)
    assert [sorted_classes(partition) for partition in state.partitions()] == [
        [],
        [[0], [1]],
        [[0, 1]],
        [[0], [1]],
        [],
    ]
    # One split for the first ball interval, one for the pair interval.
    assert state.counters.splits == 2
    assert state.counters.union == 1


def test_counters_are_consistent() -> None:
    """Every event is counted, and one make-set happens per ball per covered cell."""
    ball_intervals, pair_intervals = _four_point_inputs()
    state = sweep(ball_intervals, pair_intervals)
    counters = state.counters
    assert counters.events == 9
    assert counters.uf_operations == counters.make_set + counters.union + counters.find_set
    assert counters.make_set >= 4
    assert counters.union >= 5
    assert counters.as_dict()["uf_operations"] == counters.uf_operations


def test_claims_hold_on_random_instances() -> None:
    """Per-event bounds on touched cells, link edges and traversed neighbors."""
    for seed in range(100):
        ball_intervals, pair_intervals = _random_inputs(seed)
        n = len(ball_intervals)
        counters = sweep(ball_intervals, pair_intervals, check_claims=True).counters
        assert counters.max_cells_per_event <= 2 * n
        assert counters.max_link_edges <= n
        assert counters.max_claim3_length <= 3 * n - 1


def test_consecutive_cells_differ_on_random_instances() -> None:
    """The final partition-of-reals is minimal."""
    for seed in range(100):
        ball_intervals, pair_intervals = _random_inputs(seed)
        partitions = sweep(ball_intervals, pair_intervals).partitions()
        assert all(a != b for a, b in zip(partitions, partitions[1:]))


def test_snapshot_callback() -> None:
    """The callback sees every event, in sweep order."""
    ball_intervals, pair_intervals = _four_point_inputs()
    seen: List[int] = []

    def callback(state: SweepState, processed: List[LabeledInterval]) -> None:
        seen.append(len(processed))

    sweep(ball_intervals, pair_intervals, snapshot_callback=callback)
    assert seen == list(range(1, 10))


def test_debug_dict() -> None:
    """Debug dump lists cells with bounds, partitions and link edges."""
    state = sweep([LabeledInterval(0.0, 1.0, BallLabel(0))], [])
    dump = state.to_debug_dict()
    assert [cell["partition"] for cell in dump["cells"]] == [[], [[0]], []]
    assert dump["cells"][0]["lo"] is None
    assert dump["cells"][1] == {"lo": 0.0, "lo_closed": True, "hi": 1.0, "hi_closed": True, "partition": [[0]], "link_pred": []}
    assert dump["counters"]["make_set"] == 1


def test_fusion_does_not_compare_partitions(monkeypatch) -> None:
    """Deciding a fusion reads the link graph, never the full partitions of the two cells."""
    expected = []
    for seed in range(50):
        ball_intervals, pair_intervals = _random_inputs(seed)
        expected.append(sweep(ball_intervals, pair_intervals).to_debug_dict())

    def fail_partition(self) -> None:
        raise AssertionError("partition() called during the sweep")

    states = []
    with monkeypatch.context() as m:
        m.setattr(UnionFindForest, "partition", fail_partition)
        for seed in range(50):
            ball_intervals, pair_intervals = _random_inputs(seed)
            states.append(sweep(ball_intervals, pair_intervals))
    assert [state.to_debug_dict() for state in states] == expected
