import pytest

from aquanim.charts import Histogram
from aquanim.geometry import Rect
from aquanim.transitions import plan_histogram_rebin, plan_proportion_tip
from aquanim.verify import (
    check_conservation,
    check_script,
    corrupt_script,
    merge_adjacent,
)


def test_merge_adjacent_stacked_rects():
    merged = merge_adjacent([Rect(0, 1, 0, 2), Rect(0, 1, 2, 3)])
    assert merged == [Rect(0, 1, 0, 3)]


def test_merge_adjacent_side_by_side():
    merged = merge_adjacent([Rect(0, 1, 0, 2), Rect(1, 2, 0, 2), Rect(2, 3, 0, 2)])
    assert merged == [Rect(0, 3, 0, 2)]


def test_merge_keeps_disjoint_rects():
    rects = [Rect(0, 1, 0, 1), Rect(2, 3, 0, 1)]
    assert merge_adjacent(rects) == rects


def test_merge_drops_degenerate():
    assert merge_adjacent([Rect(0, 1, 1, 1)]) == []


def _rebin_script():
    h_old = Histogram((0, 1, 2, 3, 4), (0.4, 0.3, 0.2, 0.1))
    h_new = Histogram((0, 2, 4), (0.3, 0.2))
    return plan_histogram_rebin(h_old, h_new)


def test_check_script_clean():
    assert check_script(_rebin_script(), samples=31) == []


def test_corrupted_script_detected():
    bad = corrupt_script(_rebin_script(), 1.01)
    violations = check_conservation(bad, samples=31)
    assert violations
    assert violations[0].check == "conservation"
    assert violations[0].liquid == "data"
    assert 0.0 < violations[0].t < 1.0


def test_corruption_factor_one_is_benign():
    assert check_script(corrupt_script(_rebin_script(), 1.0), samples=31) == []


def test_tip_script_full_ledger():
    h = Histogram((0, 1, 2, 3), (0.5, 0.25, 0.25))
    assert check_script(plan_proportion_tip(h, [0, 2]), samples=31) == []
