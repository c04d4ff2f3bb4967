"""Histogram transition planners.

Data-change (fill/empty with pressure tint and rescale), rebinning through
intersection cells, its diffusive variant, and the proportion tip that drains
selected bars into a full-width band and back.
"""

from __future__ import annotations

from typing import Sequence

from ..blocks import FillSpec, fill_at
from ..charts import Histogram, histogram_frame, histogram_viewport
from ..easing import lerp
from ..errors import DimensionMismatch, DomainError, EmptyData, EmptySelection
from ..geometry import (
    Color,
    Frame,
    Rect,
    ScenePrimitive,
    filled_rect,
    line,
    partition_intervals,
)
from ..palette import DEFAULT_PALETTE, Palette
from .script import (
    MAIN_WEIGHT,
    VIEW_WEIGHT,
    Stage,
    TransitionScript,
    constant_stage,
    plan_view_change,
    reversed_stage,
)

# Bound on how far bar gray may blend toward pure red/blue pressure hues.
TINT_MAX = 0.5
BASELINE_STROKE = 0.01


_hist_viewport = histogram_viewport


def _baseline(edges: Sequence[float], palette: Palette) -> ScenePrimitive:
    return line(edges[0], 0.0, edges[-1], 0.0, palette["container"], BASELINE_STROKE)


def tint_fraction(total_area: float, peak_area: float) -> float:
    """Pressure tint blend: scaled deviation of the transient area from 1."""
    deviation = abs(total_area - 1.0)
    peak = max(abs(peak_area - 1.0), 1e-12)
    return min(1.0, deviation / peak) * TINT_MAX


def plan_histogram_data_change(old_counts: Sequence[float], new_counts: Sequence[float],
                               data_range: tuple[float, float],
                               palette: Palette = DEFAULT_PALETTE) -> TransitionScript:
    """Adapt a histogram to appearing/disappearing data.

    Bars gaining data fill red, bars losing data empty blue; all bars take a
    reddish or bluish cast while the transient total area drifts from 1, then
    a uniform rescale brings the area back to unity as the tint fades.
    """
    if len(old_counts) != len(new_counts):
        raise DimensionMismatch(
            f"old and new counts differ in length: {len(old_counts)} vs {len(new_counts)}")
    if len(old_counts) == 0:
        raise DimensionMismatch("need at least one bin")
    if any(c < 0 for c in old_counts) or any(c < 0 for c in new_counts):
        raise DomainError("counts must be non-negative")
    n_old = float(sum(old_counts))
    n_new = float(sum(new_counts))
    if n_old <= 0.0 or n_new <= 0.0:
        raise EmptyData("both count totals must be positive")

    lo, hi = data_range
    if not lo < hi:
        raise DomainError(f"range must satisfy lo < hi, got [{lo}, {hi}]")
    bins = len(old_counts)
    width = (hi - lo) / bins
    edges = tuple(lo + i * width for i in range(bins + 1))

    dens_old = tuple(c / (n_old * width) for c in old_counts)
    dens_transient = tuple(c / (n_old * width) for c in new_counts)
    peak_area = n_new / n_old
    h_old = Histogram(edges, dens_old)
    h_final = Histogram(edges, tuple(c / (n_new * width) for c in new_counts))

    gray = palette["liquid_gray"]
    red = palette["more_data_red"]
    blue = palette["less_data_blue"]
    pressure = red if peak_area > 1.0 else blue

    def fill_scene(u: float) -> Frame:
        area = lerp(1.0, peak_area, u)
        tint = tint_fraction(area, peak_area)
        base_color = gray.mixed(pressure, tint)
        prims: list[ScenePrimitive] = []
        decorations: list[ScenePrimitive] = []
        for i in range(bins):
            x0, x1 = edges[i], edges[i + 1]
            d0, d1 = dens_old[i], dens_transient[i]
            base = min(d0, d1)
            if base > 0.0:
                prims.append(filled_rect(Rect(x0, x1, 0.0, base), base_color, liquid="data"))
            if d1 > d0:
                container = Rect(x0, x1, 0.0, d1)
                liquid, deco = fill_at(FillSpec(container, "y", d0, d1), u, palette)
                if liquid.y_max > d0:
                    prims.append(filled_rect(Rect(x0, x1, d0, liquid.y_max), red,
                                             liquid="data"))
                decorations.extend(deco)
            elif d1 < d0:
                container = Rect(x0, x1, 0.0, d0)
                liquid, deco = fill_at(FillSpec(container, "y", d0, d1), u, palette)
                if liquid.y_max > d1:
                    prims.append(filled_rect(Rect(x0, x1, d1, liquid.y_max), blue,
                                             liquid="data"))
                decorations.extend(deco)
        prims.extend(decorations)
        prims.append(_baseline(edges, palette))
        return Frame(tuple(prims), viewport, {"tint": tint, "total_area": area})

    def rescale_scene(u: float) -> Frame:
        factor = lerp(1.0, 1.0 / peak_area, u)
        area = lerp(peak_area, 1.0, u)
        tint = tint_fraction(area, peak_area)
        base_color = gray.mixed(pressure, tint)
        delta_color = palette["more_data_red"].mixed(gray, u)
        prims: list[ScenePrimitive] = []
        for i in range(bins):
            x0, x1 = edges[i], edges[i + 1]
            d0, d1 = dens_old[i], dens_transient[i]
            base = min(d0, d1)
            if base > 0.0:
                prims.append(filled_rect(Rect(x0, x1, 0.0, base * factor), base_color,
                                         liquid="data"))
            if d1 > d0:
                prims.append(filled_rect(Rect(x0, x1, base * factor, d1 * factor),
                                         delta_color, liquid="data"))
        prims.append(_baseline(edges, palette))
        return Frame(tuple(prims), viewport, {"tint": tint, "total_area": area})

    top = max(max(dens_old), max(dens_transient),
              max(d / peak_area for d in dens_transient))
    viewport = _hist_viewport(edges, top)
    vp_old = _hist_viewport(edges, max(dens_old))
    vp_new = _hist_viewport(edges, max(h_final.densities))

    stages = (
        plan_view_change(vp_old, viewport, fill_scene(0.0).primitives,
                         meta={"tint": 0.0, "total_area": 1.0}),
        Stage("fill_empty_tinted", MAIN_WEIGHT, fill_scene, conserves_area=False),
        Stage("rescale_tinted", MAIN_WEIGHT, rescale_scene, conserves_area=False),
        plan_view_change(viewport, vp_new, rescale_scene(1.0).primitives,
                         meta={"tint": 0.0, "total_area": 1.0}),
    )
    return TransitionScript(stages, histogram_frame(h_old, palette),
                            histogram_frame(h_final, palette), palette)


def _step_contour(edges: Sequence[float], levels: Sequence[float],
                  color: Color, palette: Palette) -> list[ScenePrimitive]:
    """Outline of a histogram as explicit line segments."""
    prims = [line(edges[0], 0.0, edges[0], levels[0], color, BASELINE_STROKE)]
    for i, level in enumerate(levels):
        prims.append(line(edges[i], level, edges[i + 1], level, color, BASELINE_STROKE))
        if i + 1 < len(levels):
            prims.append(line(edges[i + 1], level, edges[i + 1], levels[i + 1],
                              color, BASELINE_STROKE))
    prims.append(line(edges[-1], levels[-1], edges[-1], 0.0, color, BASELINE_STROKE))
    return prims


def _cell_levels(cells: Sequence[float], h: Histogram) -> list[float]:
    """Density of each intersection cell under a piecewise-constant histogram."""
    levels = []
    for lo, hi in zip(cells, cells[1:]):
        mid = 0.5 * (lo + hi)
        index = min(int((mid - h.edges[0]) / h.bin_width), h.bin_count - 1)
        levels.append(h.densities[index])
    return levels


def plan_histogram_rebin(h_old: Histogram, h_new: Histogram,
                         palette: Palette = DEFAULT_PALETTE) -> TransitionScript:
    """Morph between two binnings of the same range.

    The two edge sets partition the range into intersection cells whose
    levels interpolate linearly, so the total area stays exactly 1; source
    and target contours stay superimposed throughout.
    """
    cells = partition_intervals(h_old.edges, h_new.edges)
    lv_old = _cell_levels(cells, h_old)
    lv_new = _cell_levels(cells, h_new)
    gray = palette["liquid_gray"]

    def morph_scene(u: float) -> Frame:
        prims: list[ScenePrimitive] = []
        for (lo, hi), d0, d1 in zip(zip(cells, cells[1:]), lv_old, lv_new):
            level = lerp(d0, d1, u)
            if level > 0.0:
                prims.append(filled_rect(Rect(lo, hi, 0.0, level), gray, liquid="data"))
        prims.extend(_step_contour(h_old.edges, h_old.densities,
                                   palette["contour_light"], palette))
        prims.extend(_step_contour(h_new.edges, h_new.densities,
                                   palette["contour_dark"], palette))
        prims.append(_baseline(cells, palette))
        return Frame(tuple(prims), viewport)

    top = max(max(lv_old), max(lv_new))
    viewport = _hist_viewport(cells, top)
    vp_old = _hist_viewport(h_old.edges, max(h_old.densities))
    vp_new = _hist_viewport(h_new.edges, max(h_new.densities))

    stages = (
        plan_view_change(vp_old, viewport, morph_scene(0.0).primitives),
        Stage("block_application", MAIN_WEIGHT, morph_scene),
        plan_view_change(viewport, vp_new, morph_scene(1.0).primitives),
    )
    return TransitionScript(stages, histogram_frame(h_old, palette),
                            histogram_frame(h_new, palette), palette)


def plan_histogram_rebin_diffusive(h_old: Histogram, h_new: Histogram, steps: int,
                                   alpha: float = 0.5,
                                   palette: Palette = DEFAULT_PALETTE) -> TransitionScript:
    """Rebin variant where cells behave like communicating vessels.

    Each iterate pulls every level toward the average of its two neighbors
    (reflecting boundaries), blends toward the target levels, then
    renormalizes the total area to 1; the last iterate snaps to the target.
    """
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    cells = partition_intervals(h_old.edges, h_new.edges)
    widths = [hi - lo for lo, hi in zip(cells, cells[1:])]
    target = _cell_levels(cells, h_new)

    iterates = [list(_cell_levels(cells, h_old))]
    current = list(iterates[0])
    for step in range(1, steps + 1):
        smoothed = diffusion_step(current, alpha)
        beta = step / steps
        blended = [(1.0 - beta) * s + beta * t for s, t in zip(smoothed, target)]
        area = sum(l * w for l, w in zip(blended, widths))
        current = [l / area for l in blended] if area > 0.0 else blended
        iterates.append(list(current))
    iterates[-1] = list(target)  # snap

    gray = palette["liquid_gray"]

    def morph_scene(u: float) -> Frame:
        position = u * steps
        index = min(int(position), steps - 1)
        frac = position - index
        levels = [lerp(a, b, frac) for a, b in zip(iterates[index], iterates[index + 1])]
        prims: list[ScenePrimitive] = []
        for (lo, hi), level in zip(zip(cells, cells[1:]), levels):
            if level > 0.0:
                prims.append(filled_rect(Rect(lo, hi, 0.0, level), gray, liquid="data"))
        prims.extend(_step_contour(h_old.edges, h_old.densities,
                                   palette["contour_light"], palette))
        prims.extend(_step_contour(h_new.edges, h_new.densities,
                                   palette["contour_dark"], palette))
        prims.append(_baseline(cells, palette))
        return Frame(tuple(prims), viewport)

    top = max(max(levels_i) for levels_i in iterates)
    viewport = _hist_viewport(cells, top)
    vp_old = _hist_viewport(h_old.edges, max(h_old.densities))
    vp_new = _hist_viewport(h_new.edges, max(h_new.densities))

    stages = (
        plan_view_change(vp_old, viewport, morph_scene(0.0).primitives),
        Stage("block_application", MAIN_WEIGHT, morph_scene),
        plan_view_change(viewport, vp_new, morph_scene(1.0).primitives),
    )
    return TransitionScript(stages, histogram_frame(h_old, palette),
                            histogram_frame(h_new, palette), palette)


def diffusion_step(levels: Sequence[float], alpha: float) -> list[float]:
    """One neighbor-averaging pass with reflecting boundaries."""
    n = len(levels)
    out = []
    for i in range(n):
        left = levels[i - 1] if i > 0 else levels[i]
        right = levels[i + 1] if i < n - 1 else levels[i]
        out.append((1.0 - alpha) * levels[i] + alpha * 0.5 * (left + right))
    return out


def plan_proportion_tip(h: Histogram, selected_bins: Sequence[int],
                        palette: Palette = DEFAULT_PALETTE) -> TransitionScript:
    """Show what share of the total the selected bars hold, then come back.

    Selected bars recolor, their liquid drains into a full-width bottom band
    while the rest rises, and the gray levels equalize into a single stacked
    column; after a pause the whole animation reverses, so the script is a
    palindrome ending on the original chart.
    """
    selection = sorted(set(int(i) for i in selected_bins))
    if not selection:
        raise EmptySelection("no bins selected")
    if selection[0] < 0 or selection[-1] >= h.bin_count:
        raise DomainError(f"selected bin {selection[-1]} out of range")
    selected = set(selection)

    edges = h.edges
    w = h.bin_width
    total_width = edges[-1] - edges[0]
    area_selected = sum(h.densities[i] * w for i in selected)
    area_rest = sum(h.densities[i] * w for i in range(h.bin_count) if i not in selected)
    band_height = area_selected / total_width
    rest_height = area_rest / total_width

    gray = palette["liquid_gray"]
    yellow = palette["selection_yellow"]

    def bar_id(i: int) -> str:
        return "selected" if i in selected else "rest"

    def bar_color(i: int, recolor: float) -> Color:
        return gray.mixed(yellow, recolor) if i in selected else gray

    def static_scene(recolor: float) -> Frame:
        prims: list[ScenePrimitive] = []
        for i, density in enumerate(h.densities):
            if density > 0.0:
                prims.append(filled_rect(Rect(edges[i], edges[i + 1], 0.0, density),
                                         bar_color(i, recolor), liquid=bar_id(i)))
        prims.append(_baseline(edges, palette))
        return Frame(tuple(prims), viewport)

    def drain_scene(u: float) -> Frame:
        band_top = u * band_height
        prims: list[ScenePrimitive] = []
        if band_top > 0.0:
            prims.append(filled_rect(Rect(edges[0], edges[-1], 0.0, band_top), yellow,
                                     liquid="selected"))
        for i, density in enumerate(h.densities):
            x0, x1 = edges[i], edges[i + 1]
            if i in selected:
                own = (1.0 - u) * density
                if own > 0.0:
                    prims.append(filled_rect(Rect(x0, x1, band_top, band_top + own),
                                             yellow, liquid="selected"))
            elif density > 0.0:
                prims.append(filled_rect(Rect(x0, x1, band_top, band_top + density),
                                         gray, liquid="rest"))
        prims.append(line(edges[0], band_height, edges[-1], band_height,
                          palette["target_line"], BASELINE_STROKE))
        prims.append(_baseline(edges, palette))
        return Frame(tuple(prims), viewport)

    def equalize_scene(u: float) -> Frame:
        prims: list[ScenePrimitive] = []
        if band_height > 0.0:
            prims.append(filled_rect(Rect(edges[0], edges[-1], 0.0, band_height), yellow,
                                     liquid="selected"))
        for i, density in enumerate(h.densities):
            x0, x1 = edges[i], edges[i + 1]
            start = 0.0 if i in selected else density
            level = lerp(start, rest_height, u)
            if level > 0.0:
                prims.append(filled_rect(Rect(x0, x1, band_height, band_height + level),
                                         gray, liquid="rest"))
        prims.append(line(edges[0], band_height + rest_height, edges[-1],
                          band_height + rest_height, palette["target_line"],
                          BASELINE_STROKE))
        prims.append(_baseline(edges, palette))
        return Frame(tuple(prims), viewport)

    top = band_height + max(max(h.densities), rest_height)
    viewport = _hist_viewport(edges, top)
    vp_chart = _hist_viewport(edges, max(h.densities))

    recolor = Stage("block_application", VIEW_WEIGHT, static_scene)
    drain = Stage("block_application", MAIN_WEIGHT, drain_scene)
    equalize = Stage("block_application", MAIN_WEIGHT, equalize_scene)
    pause = constant_stage(equalize_scene(1.0), VIEW_WEIGHT)

    stages = (
        plan_view_change(vp_chart, viewport, static_scene(0.0).primitives),
        recolor,
        drain,
        equalize,
        pause,
        reversed_stage(equalize),
        reversed_stage(drain),
        reversed_stage(recolor),
        plan_view_change(viewport, vp_chart, static_scene(0.0).primitives),
    )
    endpoint = Frame(static_scene(0.0).primitives, vp_chart)
    return TransitionScript(stages, endpoint, endpoint, palette)
