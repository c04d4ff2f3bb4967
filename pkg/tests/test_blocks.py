import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aquanim.blocks import (
    FillSpec,
    ReshapeSpec,
    SegmentStack,
    TransferSpec,
    classify_reshape,
    fill_at,
    naive_vertex_lerp,
    reshape_at,
    segments_shift_at,
    shift_at,
    stack_rects,
    transfer_at,
)
from aquanim.errors import (
    AreaMismatch,
    EscapesContainer,
    LevelOutOfRange,
    UnknownLiquid,
)
from aquanim.geometry import Rect, overlap_area, rect_area


# --- fill/empty -------------------------------------------------------------

def test_fill_emptying_midpoint_with_target_line():
    spec = FillSpec(Rect(0, 1, 0, 4), "y", 3.0, 1.0)
    liquid, decoration = fill_at(spec, 0.5)
    assert liquid == Rect(0, 1, 0, 2.0)
    target_lines = [p for p in decoration if p.kind == "line"]
    assert len(target_lines) == 1
    x1, y1, x2, y2 = target_lines[0].points
    assert y1 == y2 == 1.0  # final level marked throughout the emptying


def test_fill_endpoints():
    spec = FillSpec(Rect(0, 1, 0, 4), "y", 3.0, 1.0)
    assert fill_at(spec, 0.0)[0].y_max == 3.0
    assert fill_at(spec, 1.0)[0].y_max == 1.0


def test_fill_reminder_line_when_filling():
    spec = FillSpec(Rect(0, 1, 0, 4), "y", 1.0, 3.0)
    _, decoration = fill_at(spec, 0.25)
    marks = [p for p in decoration if p.kind == "line"]
    assert marks and marks[0].points[1] == 1.0  # initial level reminder


def test_fill_level_out_of_range():
    with pytest.raises(LevelOutOfRange):
        FillSpec(Rect(0, 1, 0, 4), "y", 5.0, 1.0)


# --- shift ------------------------------------------------------------------

def test_shift_midpoint():
    moved = shift_at(Rect(0, 1, 0, 1), Rect(0, 1, 0, 4), 2.0, 0.5, axis="y")
    assert moved == Rect(0, 1, 1.0, 2.0)


def test_shift_identity_cases():
    liquid = Rect(0, 1, 0, 1)
    container = Rect(0, 1, 0, 4)
    assert shift_at(liquid, container, 2.0, 0.0, axis="y") == liquid
    for u in (0.0, 0.5, 1.0):
        assert shift_at(liquid, container, 0.0, u, axis="y") == liquid


def test_shift_preserves_area_exactly():
    moved = shift_at(Rect(0, 1, 0, 1), Rect(0, 1, 0, 4), 3.0, 0.37, axis="y")
    assert rect_area(moved) == 1.0


def test_shift_escapes_container():
    with pytest.raises(EscapesContainer):
        shift_at(Rect(0, 1, 0, 1), Rect(0, 1, 0, 4), 3.5, 0.5, axis="y")


# --- reshape ----------------------------------------------------------------

def test_classify_single_piston_single_free():
    spec = classify_reshape(Rect(0, 1, 0, 4), Rect(0, 4, 0, 1))
    assert spec.case_code == "L.H"
    assert spec.piston_axis == "x"
    assert spec.staging == "direct"


def test_classify_identity():
    spec = classify_reshape(Rect(0, 2, 0, 2), Rect(0, 2, 0, 2))
    assert spec.case_code == "identity"


def test_classify_four_moving_edges_staged():
    spec = classify_reshape(Rect(0, 1, 0, 4), Rect(2, 6, 1.5, 2.5))
    assert spec.case_code == "LL.HH"
    assert spec.staging == "translate_then_reshape"


def test_classify_three_moving_edges_prefers_two_pistons():
    # x extent 1->2 with both x edges moving, y extent 2->1 with y_max moving
    spec = classify_reshape(Rect(0, 1, 0, 2), Rect(1, 3, 0, 1))
    assert spec.case_code == "LL.H"
    assert spec.piston_axis == "x"


def test_classify_area_mismatch():
    with pytest.raises(AreaMismatch):
        classify_reshape(Rect(0, 1, 0, 4), Rect(0, 4, 0, 2))


def test_reshape_worked_single_free_edge():
    spec = classify_reshape(Rect(0, 1, 0, 4), Rect(0, 4, 0, 1))
    rect, decoration = reshape_at(spec, 0.5)
    assert rect.x_max == pytest.approx(2.5, abs=1e-12)
    assert rect.y_max == pytest.approx(1.6, abs=1e-12)
    assert rect_area(rect) == pytest.approx(4.0, rel=1e-12)
    kinds = {p.kind for p in decoration}
    assert "stroked_rect" in kinds and "line" in kinds  # cylinder and pistons


def test_reshape_worked_centered_pair():
    spec = classify_reshape(Rect(0, 1, 0, 4), Rect(2, 6, 1.5, 2.5))
    rect, _ = reshape_at(spec, 0.5)
    assert (rect.x_min, rect.x_max) == pytest.approx((1.0, 3.5), abs=1e-12)
    assert (rect.y_min, rect.y_max) == pytest.approx((1.2, 2.8), abs=1e-12)
    assert rect_area(rect) == pytest.approx(4.0, rel=1e-9)


def test_reshape_identity():
    spec = classify_reshape(Rect(0, 2, 0, 2), Rect(0, 2, 0, 2))
    for u in (0.0, 0.31, 1.0):
        rect, _ = reshape_at(spec, u)
        assert rect == Rect(0, 2, 0, 2)


def test_reshape_endpoints_exact():
    init, final = Rect(0, 1, 0, 4), Rect(0, 4, 0, 1)
    spec = classify_reshape(init, final)
    assert reshape_at(spec, 0.0)[0] == init
    assert reshape_at(spec, 1.0)[0] == final


def test_naive_vertex_lerp_distorts_area():
    # the contrast case: straight corner interpolation inflates 4 to 6.25
    mid = naive_vertex_lerp(Rect(0, 1, 0, 4), Rect(0, 4, 0, 1), 0.5)
    assert mid == Rect(0, 2.5, 0, 2.5)
    assert rect_area(mid) == 6.25


def test_reshape_pure_translation_is_exact():
    spec = classify_reshape(Rect(0, 1, 0, 4), Rect(0, 1, 1, 5))
    rect, _ = reshape_at(spec, 0.5)
    assert rect == Rect(0, 1, 0.5, 4.5)
    assert rect_area(rect) == pytest.approx(4.0, rel=1e-12)


def _random_equal_area_pair(rng):
    x0, y0 = rng.uniform(-5, 5, 2)
    w0 = rng.uniform(0.1, 6.0)
    h0 = rng.uniform(0.1, 6.0)
    init = Rect(x0, x0 + w0, y0, y0 + h0)
    area = rect_area(init)
    w1 = rng.uniform(0.1, 6.0)
    x1, y1 = rng.uniform(-5, 5, 2)
    final = Rect(x1, x1 + w1, y1, y1 + area / w1)
    return init, final, area


def test_reshape_conservation_random_pairs():
    rng = np.random.default_rng(7)
    for _ in range(200):
        init, final, area = _random_equal_area_pair(rng)
        spec = classify_reshape(init, final)
        for i in range(21):
            rect, _ = reshape_at(spec, i / 20)
            assert abs(rect_area(rect) - area) <= 1e-9 * area


# --- transfer ---------------------------------------------------------------

def test_transfer_worked_three_containers():
    spec = TransferSpec(((1.0, 3.0, 1.0), (2.0, 1.0, 2.0), (1.0, 1.0, 1.0)))
    assert spec.total_area == 6.0
    levels = transfer_at(spec, 0.5)
    assert levels == pytest.approx([2.0, 1.5, 1.0])
    assert sum(w * l for (w, _, _), l in zip(spec.containers, levels)) == pytest.approx(6.0)


def test_transfer_two_containers():
    spec = TransferSpec(((1.0, 4.0, 1.0), (1.0, 0.0, 3.0)))
    assert transfer_at(spec, 0.5) == pytest.approx([2.5, 1.5])


def test_transfer_initial_levels():
    spec = TransferSpec(((1.0, 3.0, 1.0), (2.0, 1.0, 2.0)))
    assert transfer_at(spec, 0.0) == [3.0, 1.0]


def test_transfer_area_mismatch():
    with pytest.raises(AreaMismatch):
        TransferSpec(((1.0, 1.0, 2.0), (1.0, 1.0, 1.0)))


@settings(max_examples=50)
@given(st.integers(2, 8), st.integers(0, 2**31 - 1), st.floats(0, 1))
def test_transfer_conservation_property(count, seed, u):
    rng = np.random.default_rng(seed)
    widths = rng.uniform(0.2, 3.0, count)
    l0 = rng.uniform(0.0, 5.0, count)
    l1 = rng.uniform(0.0, 5.0, count)
    # balance the endpoints exactly by scaling the target levels
    a0 = float(np.dot(widths, l0))
    a1 = float(np.dot(widths, l1))
    if a1 == 0.0 or a0 == 0.0:
        return
    l1 = l1 * (a0 / a1)
    spec = TransferSpec(tuple(zip(widths, l0, l1)))
    levels = transfer_at(spec, u)
    total = sum(w * l for w, l in zip(widths, levels))
    assert abs(total - spec.total_area) <= 1e-9 * spec.total_area
    for (lo, hi), level in zip(((min(a, b), max(a, b)) for a, b in zip(l0, l1)), levels):
        assert lo - 1e-12 <= level <= hi + 1e-12


# --- communicating segments -------------------------------------------------

def test_segments_worked_case():
    stack = SegmentStack(1.0, (("A", 2.0), ("B", 1.0), ("C", 3.0)))
    mid = segments_shift_at(stack, "C", 0.5)
    assert mid.segments == (("C", 1.5), ("A", 2.0), ("B", 1.0), ("C", 1.5))
    assert mid.total_height == 6.0


def test_segments_final_ordering():
    stack = SegmentStack(1.0, (("A", 2.0), ("B", 1.0), ("C", 3.0)))
    done = segments_shift_at(stack, "C", 1.0)
    assert done.segments == (("C", 3.0), ("A", 2.0), ("B", 1.0))


def test_segments_bottom_fixed_point():
    stack = SegmentStack(1.0, (("C", 3.0), ("A", 2.0), ("B", 1.0)))
    for u in (0.0, 0.4, 1.0):
        shifted = segments_shift_at(stack, "C", u)
        assert [lid for lid, _ in shifted.segments] == ["C", "A", "B"]
        heights = [h for _, h in shifted.segments]
        assert heights == pytest.approx([3.0, 2.0, 1.0], rel=1e-12)


def test_segments_unknown_liquid():
    stack = SegmentStack(1.0, (("A", 2.0),))
    with pytest.raises(UnknownLiquid):
        segments_shift_at(stack, "Z", 0.5)


liquid_ids = st.sampled_from(["A", "B", "C", "D"])
stacks = st.lists(st.tuples(liquid_ids, st.floats(0.0, 5.0)), min_size=1, max_size=8)


@given(stacks, st.floats(0, 1), st.integers(0, 3))
def test_segments_conservation_and_no_overlap(segments, u, pick):
    stack = SegmentStack(1.0, tuple(segments))
    present = sorted({lid for lid, _ in segments})
    selected = present[pick % len(present)]
    shifted = segments_shift_at(stack, selected, u)
    assert shifted.total_height == pytest.approx(stack.total_height, rel=1e-12, abs=1e-12)
    for lid in present:
        assert shifted.liquid_height(lid) == pytest.approx(
            stack.liquid_height(lid), rel=1e-12, abs=1e-12)
    rects = stack_rects(shifted, 0.0, 0.0)
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            if rects[i][0] != rects[j][0]:
                assert overlap_area(rects[i][1], rects[j][1]) == 0.0


@given(stacks, st.floats(0, 1), st.integers(0, 3))
def test_segments_non_selected_keep_heights_in_order(segments, u, pick):
    stack = SegmentStack(1.0, tuple(segments))
    present = sorted({lid for lid, _ in segments})
    selected = present[pick % len(present)]
    shifted = segments_shift_at(stack, selected, u)
    original = [h for lid, h in stack.segments if lid != selected and h > 0.0]
    kept = [h for lid, h in shifted.segments if lid != selected]
    # merged runs can only join same-liquid neighbors, so others match exactly
    assert kept == original
