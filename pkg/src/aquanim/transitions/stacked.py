"""Stacked bar chart reordering planners.

Vertical reordering moves a level to the bottom of every bar at once through
communicating segments; horizontal reordering moves one bar to a new slot by
opening a gap, transferring its segments bottom-up, and closing the old slot.
"""

from __future__ import annotations

from ..blocks import segments_shift_at, stack_rects
from ..charts import StackedBarChart, stacked_frame, stacked_viewport
from ..easing import lerp
from ..errors import InvalidPosition, UnknownCategory, UnknownLevel
from ..geometry import Frame, Rect, ScenePrimitive, filled_rect, label, line
from ..palette import DEFAULT_PALETTE, Palette
from .script import (
    MAIN_WEIGHT,
    VIEW_WEIGHT,
    Stage,
    TransitionScript,
    plan_view_change,
    reversed_stage,
)

BASELINE_STROKE = 0.01


def _chart_top(chart: StackedBarChart) -> float:
    top = max((sum(row) for row in chart.heights), default=0.0)
    return top if top > 0.0 else 1.0

_chart_viewport = stacked_viewport


def plan_stacked_vertical_reorder(chart: StackedBarChart, level: str,
                                  palette: Palette = DEFAULT_PALETTE) -> TransitionScript:
    """Move one level to the bottom of every bar simultaneously.

    Applies the communicating-segments shift to all bars at once: the
    selected liquid grows a bottom segment while its original segments
    vanish, intermediate segments sliding up without occlusion.
    """
    if level not in chart.level_names:
        raise UnknownLevel(f"no level named {level!r}")

    magenta = palette["segment_magenta"]
    level_color = chart.level_color(level)
    viewport = _chart_viewport(chart)

    def scene(shift_u: float, highlight: float) -> Frame:
        prims: list[ScenePrimitive] = []
        top = _chart_top(chart)
        for i, category in enumerate(chart.categories):
            stack = segments_shift_at(chart.stack_for(i), level, shift_u)
            x = chart.bar_x(i)
            for lid, rect in stack_rects(stack, x, 0.0):
                color = chart.level_color(lid)
                if lid == level:
                    color = color.mixed(magenta, highlight)
                prims.append(filled_rect(rect, color, liquid=lid))
            prims.append(label(x + chart.bar_width / 2, -0.08 * top, category,
                               palette["label"]))
        x_max = chart.bar_x(len(chart.categories) - 1) + chart.bar_width
        prims.append(line(0.0, 0.0, x_max, 0.0, palette["container"], BASELINE_STROKE))
        return Frame(tuple(prims), viewport)

    recolor = Stage("block_application", VIEW_WEIGHT, lambda u: scene(0.0, u))
    shift = Stage("block_application", MAIN_WEIGHT, lambda u: scene(u, 1.0))
    restore = reversed_stage(Stage("block_application", VIEW_WEIGHT,
                                   lambda u: scene(1.0, u)))
    stages = (recolor, shift, restore)

    order = [level] + [name for name in chart.level_names if name != level]
    indices = [chart.level_names.index(name) for name in order]
    reordered = StackedBarChart(
        chart.categories,
        tuple(chart.levels[i] for i in indices),
        tuple(tuple(row[i] for i in indices) for row in chart.heights),
        chart.bar_width, chart.gap)
    return TransitionScript(stages, stacked_frame(chart, palette),
                            stacked_frame(reordered, palette), palette)


def plan_stacked_horizontal_reorder(chart: StackedBarChart, moving: str,
                                    target_position: int,
                                    palette: Palette = DEFAULT_PALETTE) -> TransitionScript:
    """Move one bar to another slot without occlusion.

    A labeled empty slot opens at the destination, the bar's segments
    transfer one at a time from the bottom (source level falling while the
    destination level rises, equal widths so the variations cancel), then the
    emptied slot closes.
    """
    if moving not in chart.categories:
        raise UnknownCategory(f"no category named {moving!r}")
    n = len(chart.categories)
    m = chart.categories.index(moving)
    if not (0 <= target_position < n):
        raise InvalidPosition(f"target position {target_position} out of range 0..{n - 1}")
    if target_position == m:
        raise InvalidPosition("target position equals the current one")

    pitch = chart.bar_width + chart.gap
    j = target_position

    # Slot index of every category in the widened (n+1 slot) layout, plus the
    # destination slot. The moving bar keeps its original slot while the gap
    # opens where it will land.
    gap_slot = j + 1 if j > m else j
    gapped_slot = [i if i < gap_slot else i + 1 for i in range(n)]
    dest_slot = gap_slot

    # Final ordering and slots after the old position closes.
    final_order = [c for c in chart.categories if c != moving]
    final_order.insert(j, moving)
    final_slot = {c: final_order.index(c) for c in chart.categories}

    heights = chart.heights[m]
    level_names = chart.level_names
    transfer_levels = [(idx, h) for idx, h in enumerate(heights)]
    top = _chart_top(chart)
    viewport = _chart_viewport(chart, extra_slots=1)
    vp_ends = _chart_viewport(chart)

    def bar_prims(x: float, rows: list[tuple[str, float]],
                  cat_label: str | None) -> list[ScenePrimitive]:
        prims: list[ScenePrimitive] = []
        y = 0.0
        for name, height in rows:
            if height > 0.0:
                prims.append(filled_rect(
                    Rect(x, x + chart.bar_width, y, y + height),
                    chart.level_color(name), liquid=name))
            y += height
        if cat_label is not None:
            prims.append(label(x + chart.bar_width / 2, -0.08 * top, cat_label,
                               palette["label"]))
        return prims

    def static_others(slot_of) -> list[ScenePrimitive]:
        prims: list[ScenePrimitive] = []
        for i, category in enumerate(chart.categories):
            if i == m:
                continue
            x = slot_of(i) * pitch
            rows = list(zip(level_names, chart.heights[i]))
            prims.extend(bar_prims(x, rows, category))
        return prims

    def baseline(extra: int) -> ScenePrimitive:
        x_max = (n - 1 + extra) * pitch + chart.bar_width
        return line(0.0, 0.0, x_max, 0.0, palette["container"], BASELINE_STROKE)

    def gap_open_scene(u: float) -> Frame:
        slot_of = lambda i: lerp(i, gapped_slot[i], u)
        prims = static_others(slot_of)
        x_m = slot_of(m) * pitch
        prims.extend(bar_prims(x_m, list(zip(level_names, heights)), moving))
        x_gap = dest_slot * pitch
        prims.append(label(x_gap + chart.bar_width / 2, -0.08 * top, moving,
                           palette["label"]))
        prims.append(baseline(1))
        return Frame(tuple(prims), viewport)

    def transfer_scene(stage_index: int, u: float) -> Frame:
        slot_of = lambda i: gapped_slot[i]
        prims = static_others(slot_of)
        x_src = gapped_slot[m] * pitch
        x_dst = dest_slot * pitch
        src_rows: list[tuple[str, float]] = []
        dst_rows: list[tuple[str, float]] = []
        for idx, height in transfer_levels:
            name = level_names[idx]
            if idx < stage_index:
                dst_rows.append((name, height))
            elif idx == stage_index:
                src_rows.append((name, (1.0 - u) * height))
                dst_rows.append((name, u * height))
            else:
                src_rows.append((name, height))
        prims.extend(bar_prims(x_src, src_rows, moving))
        prims.extend(bar_prims(x_dst, dst_rows, None))
        prims.append(label(x_dst + chart.bar_width / 2, -0.08 * top, moving,
                           palette["label"]))
        prims.append(baseline(1))
        return Frame(tuple(prims), viewport)

    def gap_close_scene(u: float) -> Frame:
        prims: list[ScenePrimitive] = []
        for i, category in enumerate(chart.categories):
            if i == m:
                start = dest_slot
            else:
                start = gapped_slot[i]
            x = lerp(start, final_slot[category], u) * pitch
            prims.extend(bar_prims(x, list(zip(level_names, chart.heights[i])), category))
        prims.append(baseline(1 if u < 1.0 else 0))
        return Frame(tuple(prims), viewport)

    transfer_count = max(len(transfer_levels), 1)
    transfer_stages = tuple(
        Stage("segment_transfer_sequence", MAIN_WEIGHT / transfer_count,
              (lambda k: lambda u: transfer_scene(k, u))(idx))
        for idx, _ in transfer_levels)

    stages = (
        plan_view_change(vp_ends, viewport, gap_open_scene(0.0).primitives),
        Stage("layout_gap", VIEW_WEIGHT, gap_open_scene),
        *transfer_stages,
        Stage("layout_gap", VIEW_WEIGHT, gap_close_scene),
        plan_view_change(viewport, vp_ends, gap_close_scene(1.0).primitives),
    )

    reordered = StackedBarChart(
        tuple(final_order),
        chart.levels,
        tuple(chart.heights[chart.categories.index(c)] for c in final_order),
        chart.bar_width, chart.gap)
    return TransitionScript(stages, stacked_frame(chart, palette),
                            stacked_frame(reordered, palette), palette)
