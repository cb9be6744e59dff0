"""Unit tests on labeled intervals."""

import pytest

from reebsweep.common.errors import ContractViolationError
from reebsweep.common.labeled_interval import BallLabel, LabeledInterval, PairLabel


def test_pair_label_is_unordered() -> None:
    """{p,q} and {q,p} give the same label, stored with p < q."""
    assert PairLabel.unordered(3, 1) == PairLabel.unordered(1, 3) == PairLabel(1, 3)


def test_pair_label_requires_distinct_points() -> None:
    """A pair label joins two different points."""
    with pytest.raises(ContractViolationError):
        PairLabel.unordered(2, 2)
    with pytest.raises(ContractViolationError):
        LabeledInterval(0.0, 1.0, PairLabel(2, 2))


def test_interval_endpoints() -> None:
    """lo > hi is rejected; single-point intervals are allowed."""
    with pytest.raises(ContractViolationError):
        LabeledInterval(1.0, 0.0, BallLabel(0))
    I = LabeledInterval(0.5, 0.5, BallLabel(0))
    assert I.contains(0.5)
    assert not I.contains(0.5000001)


def test_contains_is_closed() -> None:
    """Both endpoints belong to the interval."""
    I = LabeledInterval(0.0, 2.0, BallLabel(1))
    assert I.contains(0.0)
    assert I.contains(2.0)
    assert not I.contains(-1e-12)


def test_is_subinterval_of() -> None:
    """Containment of pair intervals in ball intervals."""
    I_p = LabeledInterval(0.0, 2.0, BallLabel(0))
    I_pq = LabeledInterval(0.0987, 0.5013, PairLabel(0, 1))
    assert I_pq.is_subinterval_of(I_p)
    assert not I_p.is_subinterval_of(I_pq)


def test_sort_key_ball_before_pair() -> None:
    """On equal left endpoints ball intervals come first, then label ids break ties."""
    I_r = LabeledInterval(0.3, 2.3, BallLabel(2))
    I_qr = LabeledInterval(0.3, 0.6, PairLabel(1, 2))
    I_pr = LabeledInterval(0.3, 0.9, PairLabel(0, 2))
    ordered = sorted([I_qr, I_pr, I_r], key=lambda I: I.sort_key())
    assert ordered == [I_r, I_pr, I_qr]


def test_kind() -> None:
    """Ball and pair intervals are told apart by their labels."""
    assert LabeledInterval(0, 1, BallLabel(0)).is_ball
    assert LabeledInterval(0, 1, PairLabel(0, 1)).is_pair
    assert str(PairLabel(0, 1)) == "I_{0,1}"
    assert str(BallLabel(4)) == "I_4"
