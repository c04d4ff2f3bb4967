"""Confusion-matrix transition: fluctuation diagram to mosaic plot.

Cell squares slide to a staging column right of the plot, reshape into
marginal-height bands whose segment widths are the conditionals (the areas,
being invariant, land on the joints by Bayes' rule), the bands pile into a
unit square, and a final view rescale makes the mosaic fill the frame.
"""

from __future__ import annotations

from ..blocks import classify_reshape, reshape_at
from ..charts import (
    ConfusionMatrix,
    FluctuationLayout,
    fit_viewport,
    fluctuation_frame,
    fluctuation_layout,
    probability_table,
)
from ..easing import lerp
from ..geometry import Frame, Rect, ScenePrimitive, filled_rect, stroked_rect
from ..palette import DEFAULT_PALETTE, Palette
from .script import MAIN_WEIGHT, Stage, TransitionScript, plan_view_change, rect_lerp


def plan_fluctuation_to_mosaic(cm: ConfusionMatrix,
                               palette: Palette = DEFAULT_PALETTE) -> TransitionScript:
    pt = probability_table(cm)
    k = pt.size
    g = 1.0
    layout = fluctuation_layout(pt, g)

    # Stage geometry. Row p's squares pack side by side, bottom-aligned on
    # their future band baseline, in a column one cell beyond the margins.
    strip_x = (k + 1) * g
    packed: dict[tuple[int, int], Rect] = {}
    bands: dict[int, Rect] = {}
    segments: dict[tuple[int, int], Rect] = {}
    for p in range(k):
        y_base = (k - 1 - p) * g
        height = pt.marginal_pred[p] * g
        if height > 0.0:
            bands[p] = Rect(strip_x, strip_x + g, y_base, y_base + height)
        x_pack = strip_x
        x_seg = strip_x
        for o in range(k):
            cell = layout.cells[p][o]
            width = pt.cond_obs_given_pred[p][o] * g
            if cell is not None:
                side = cell.width
                packed[(p, o)] = Rect(x_pack, x_pack + side, y_base, y_base + side)
                segments[(p, o)] = Rect(x_seg, x_seg + width, y_base, y_base + height)
                x_pack += side
            x_seg += width

    # Piled positions: bands stack top-down into a unit square at the top of
    # the staging column, the mosaic ending the same size as the reference.
    mosaic_top = k * g
    pile_shift: dict[int, float] = {}
    cum = 0.0
    for p in range(k):
        height = pt.marginal_pred[p] * g
        if p in bands:
            pile_shift[p] = (mosaic_top - cum - height) - bands[p].y_min
        cum += height
    mosaic_square = Rect(strip_x, strip_x + g, mosaic_top - g, mosaic_top)

    reshape_specs = {key: classify_reshape(packed[key], segments[key])
                     for key in packed}

    def backdrop() -> list[ScenePrimitive]:
        prims = [stroked_rect(Rect(0.0, k * g, 0.0, k * g), palette["container"],
                              0.015 * g)]
        prims.append(filled_rect(layout.reference, palette["reference"]))
        return prims

    def cell_prim(key: tuple[int, int], rect: Rect) -> ScenePrimitive:
        p, o = key
        return filled_rect(rect, palette.categorical(p), liquid=f"cell:{p},{o}",
                           stroke=palette.categorical(o), stroke_width=0.02 * g)

    def translate_scene(u: float) -> Frame:
        prims = backdrop()
        for key, target in packed.items():
            p, o = key
            prims.append(cell_prim(key, rect_lerp(layout.cells[p][o], target, u)))
        return Frame(tuple(prims), viewport)

    def reshape_scene(u: float) -> Frame:
        prims = backdrop()
        decorations: list[ScenePrimitive] = []
        for key, spec in reshape_specs.items():
            rect, deco = reshape_at(spec, u, palette)
            prims.append(cell_prim(key, rect))
            decorations.extend(deco)
        prims.extend(decorations)
        return Frame(tuple(prims), viewport)

    def pile_scene(u: float) -> Frame:
        prims = backdrop()
        prims.append(stroked_rect(mosaic_square, palette["container"], 0.015 * g))
        for key, rect in segments.items():
            p, _ = key
            shift = lerp(0.0, pile_shift[p], u)
            prims.append(cell_prim(key, rect.translated(0.0, shift)))
        return Frame(tuple(prims), viewport)

    packed_extent = max((r.x_max for r in packed.values()), default=strip_x + g)
    bounds = layout.bounds.union(Rect(strip_x, max(packed_extent, strip_x + g),
                                      0.0, mosaic_top))
    viewport = fit_viewport(bounds)
    vp_final = fit_viewport(mosaic_square)

    stages = (
        Stage("block_application", MAIN_WEIGHT, translate_scene),
        Stage("block_application", MAIN_WEIGHT, reshape_scene),
        Stage("block_application", MAIN_WEIGHT, pile_scene),
        plan_view_change(viewport, vp_final, pile_scene(1.0).primitives),
    )

    initial = fluctuation_frame(layout, cm.labels, palette)
    final = Frame(pile_scene(1.0).primitives, vp_final)
    return TransitionScript(stages, Frame(initial.primitives, viewport),
                            final, palette)
