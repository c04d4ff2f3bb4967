"""The five hydraulic building blocks.

fill/empty (not area-preserving on its own; it feeds the transfer blocks),
shift, reshape with its edge typology, communicating-containers transfer,
and communicating-segments shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .easing import DEGENERATE_EXTENT_TOL, EasedTime, centered_pair, hyperbolic_extent, lerp
from .errors import (
    AreaMismatch,
    DegenerateExtent,
    DomainError,
    EscapesContainer,
    LevelOutOfRange,
    UnknownLiquid,
)
from .geometry import Color, Rect, ScenePrimitive, line, rect_area, stroked_rect
from .palette import DEFAULT_PALETTE, Palette

Axis = Literal["x", "y"]

# An edge closer than this to its counterpart is considered unmoved.
EDGE_MOVE_TOL = 1e-12
AREA_REL_TOL = 1e-9
DECOR_STROKE = 0.01


def _axis_extent(r: Rect, axis: Axis) -> float:
    return r.width if axis == "x" else r.height


@dataclass(frozen=True)
class FillSpec:
    """A container being filled or emptied along one axis.

    Levels measure the liquid extent from the container's low edge.
    """

    container: Rect
    axis: Axis
    level0: float
    level1: float

    def __post_init__(self):
        extent = _axis_extent(self.container, self.axis)
        for name in ("level0", "level1"):
            level = getattr(self, name)
            if not (0.0 <= level <= extent + EDGE_MOVE_TOL):
                raise LevelOutOfRange(
                    f"{name}={level} outside container extent [0, {extent}]")


def fill_at(spec: FillSpec, u: EasedTime,
            palette: Palette = DEFAULT_PALETTE) -> tuple[Rect, list[ScenePrimitive]]:
    """Liquid rect at eased time u plus the guiding decoration.

    Decoration holds the container outline, a target line at the final level
    when emptying and a reminder line at the initial level when filling.
    This block alone changes the liquid's area; it is only ever composed into
    balanced transfers or tint-compensated stages.
    """
    c = spec.container
    level = lerp(spec.level0, spec.level1, u)
    if spec.axis == "y":
        liquid = Rect(c.x_min, c.x_max, c.y_min, c.y_min + level)
    else:
        liquid = Rect(c.x_min, c.x_min + level, c.y_min, c.y_max)

    decoration = [stroked_rect(c, palette["container"], DECOR_STROKE)]
    marker = None
    if spec.level1 < spec.level0:
        marker = spec.level1   # target line while emptying
    elif spec.level1 > spec.level0:
        marker = spec.level0   # initial-level reminder while filling
    if marker is not None:
        color = palette["target_line"]
        if spec.axis == "y":
            y = c.y_min + marker
            decoration.append(line(c.x_min, y, c.x_max, y, color, DECOR_STROKE))
        else:
            x = c.x_min + marker
            decoration.append(line(x, c.y_min, x, c.y_max, color, DECOR_STROKE))
    return liquid, decoration


def shift_at(liquid: Rect, container: Rect, offset1: float, u: EasedTime,
             axis: Axis = "y") -> Rect:
    """Translate the liquid along the container axis by lerp(0, offset1, u).

    The container stays fixed; area is unchanged exactly. Raises
    EscapesContainer when either endpoint leaves the container (positions in
    between are linear, so the endpoints bound the whole path).
    """
    dx, dy = (offset1, 0.0) if axis == "x" else (0.0, offset1)
    final = liquid.translated(dx, dy)
    if not container.contains_rect(liquid):
        raise EscapesContainer("liquid starts outside its container")
    if not container.contains_rect(final):
        raise EscapesContainer(
            f"offset {offset1} pushes the liquid outside its container")
    step = lerp(0.0, offset1, u)
    return liquid.translated(step, 0.0) if axis == "x" else liquid.translated(0.0, step)


@dataclass(frozen=True)
class ReshapeSpec:
    """An equal-area rectangle morph with assigned edge roles.

    piston_axis is the linearly-interpolated axis; the other axis carries the
    area constraint. case_code is one of identity, L.H, L.HH, LL.H, LL.HH.
    """

    init: Rect
    final: Rect
    piston_axis: Axis
    case_code: str
    staging: str = "direct"

    def __post_init__(self):
        a0, a1 = rect_area(self.init), rect_area(self.final)
        if abs(a0 - a1) > AREA_REL_TOL * max(a0, a1, 1e-300):
            raise AreaMismatch(
                f"reshape requires equal areas, got {a0} vs {a1}")
        if self.case_code == "identity":
            return
        if min(a0, a1) <= 0.0:
            raise DegenerateExtent("cannot reshape a zero-area rectangle")
        for axis in ("x", "y"):
            lo = min(_axis_extent(self.init, axis), _axis_extent(self.final, axis))
            if lo <= DEGENERATE_EXTENT_TOL:
                raise DegenerateExtent(
                    f"{axis} extent collapses to {lo} along the interpolation path")


def classify_reshape(init: Rect, final: Rect) -> ReshapeSpec:
    """Assign piston/free roles so the fewest area-constrained edges move.

    The piston (linear) axis is the one minimizing the count of moving
    constraint-driven edges, tie-broken to x. When all four edges move and an
    extent changes, the spec is marked for staged evaluation (translate
    first, then reshape).
    """
    a0, a1 = rect_area(init), rect_area(final)
    if abs(a0 - a1) > AREA_REL_TOL * max(a0, a1, 1e-300):
        raise AreaMismatch(f"reshape requires equal areas, got {a0} vs {a1}")

    moving_x = [abs(init.x_min - final.x_min) > EDGE_MOVE_TOL,
                abs(init.x_max - final.x_max) > EDGE_MOVE_TOL]
    moving_y = [abs(init.y_min - final.y_min) > EDGE_MOVE_TOL,
                abs(init.y_max - final.y_max) > EDGE_MOVE_TOL]
    mx, my = sum(moving_x), sum(moving_y)

    if mx + my == 0:
        return ReshapeSpec(init, final, "x", "identity")

    piston_axis: Axis = "x" if my <= mx else "y"
    piston_moves = mx if piston_axis == "x" else my
    free_moves = my if piston_axis == "x" else mx
    code = "L" * max(1, piston_moves) + "." + "H" * max(1, free_moves)

    extent_changes = (abs(init.width - final.width) > EDGE_MOVE_TOL
                      or abs(init.height - final.height) > EDGE_MOVE_TOL)
    staging = "translate_then_reshape" if (mx + my == 4 and extent_changes) else "direct"
    return ReshapeSpec(init, final, piston_axis, code, staging)


def reshape_at(spec: ReshapeSpec, u: EasedTime,
               palette: Palette = DEFAULT_PALETTE) -> tuple[Rect, list[ScenePrimitive]]:
    """Rectangle at eased time u under the area constraint, plus decoration.

    Piston edges move linearly; the free extent is area / piston-extent, so
    the free corners ride hyperbolas. The decoration shows the cylinder (the
    bounding box of both endpoint rectangles), the prolonged moving pistons
    and the moving free surfaces.
    """
    if spec.case_code == "identity":
        return spec.init, []
    if u == 0.0:
        rect = spec.init
    elif u == 1.0:
        rect = spec.final
    else:
        rect = _reshape_interior(spec, u)
    return rect, _reshape_decoration(spec, rect, palette)


def _reshape_interior(spec: ReshapeSpec, u: EasedTime) -> Rect:
    init, final = spec.init, spec.final
    area = 0.5 * (rect_area(init) + rect_area(final))
    if spec.piston_axis == "x":
        p0 = (init.x_min, init.x_max)
        p1 = (final.x_min, final.x_max)
        f0 = (init.y_min, init.y_max)
        f1 = (final.y_min, final.y_max)
    else:
        p0 = (init.y_min, init.y_max)
        p1 = (final.y_min, final.y_max)
        f0 = (init.x_min, init.x_max)
        f1 = (final.x_min, final.x_max)

    p_lo = lerp(p0[0], p1[0], u)
    p_hi = lerp(p0[1], p1[1], u)
    extent = hyperbolic_extent(area, p_hi - p_lo)

    lo_moves = abs(f0[0] - f1[0]) > EDGE_MOVE_TOL
    hi_moves = abs(f0[1] - f1[1]) > EDGE_MOVE_TOL
    if lo_moves and hi_moves:
        f_lo, f_hi = centered_pair(0.5 * (f0[0] + f0[1]), 0.5 * (f1[0] + f1[1]), extent, u)
    elif hi_moves:
        f_lo, f_hi = f0[0], f0[0] + extent
    elif lo_moves:
        f_lo, f_hi = f0[1] - extent, f0[1]
    else:
        f_lo, f_hi = f0   # both free edges in contact with the cylinder

    if spec.piston_axis == "x":
        return Rect(p_lo, p_hi, f_lo, f_hi)
    return Rect(f_lo, f_hi, p_lo, p_hi)


def _reshape_decoration(spec: ReshapeSpec, rect: Rect,
                        palette: Palette) -> list[ScenePrimitive]:
    cylinder = spec.init.union(spec.final)
    decoration = [stroked_rect(cylinder, palette["cylinder"], DECOR_STROKE)]
    piston_color = palette["piston"]
    surface_color = palette["free_surface"]

    if spec.piston_axis == "x":
        piston_pairs = ((spec.init.x_min, spec.final.x_min, rect.x_min),
                        (spec.init.x_max, spec.final.x_max, rect.x_max))
        free_pairs = ((spec.init.y_min, spec.final.y_min, rect.y_min),
                      (spec.init.y_max, spec.final.y_max, rect.y_max))
    else:
        piston_pairs = ((spec.init.y_min, spec.final.y_min, rect.y_min),
                        (spec.init.y_max, spec.final.y_max, rect.y_max))
        free_pairs = ((spec.init.x_min, spec.final.x_min, rect.x_min),
                      (spec.init.x_max, spec.final.x_max, rect.x_max))

    for e0, e1, position in piston_pairs:
        if abs(e0 - e1) <= EDGE_MOVE_TOL:
            continue
        # prolong the piston across the cylinder
        if spec.piston_axis == "x":
            decoration.append(line(position, cylinder.y_min, position, cylinder.y_max,
                                   piston_color, DECOR_STROKE))
        else:
            decoration.append(line(cylinder.x_min, position, cylinder.x_max, position,
                                   piston_color, DECOR_STROKE))
    for e0, e1, position in free_pairs:
        if abs(e0 - e1) <= EDGE_MOVE_TOL:
            continue
        # the free surface spans the current liquid only
        if spec.piston_axis == "x":
            decoration.append(line(rect.x_min, position, rect.x_max, position,
                                   surface_color, DECOR_STROKE))
        else:
            decoration.append(line(position, rect.y_min, position, rect.y_max,
                                   surface_color, DECOR_STROKE))
    return decoration


def naive_vertex_lerp(init: Rect, final: Rect, u: EasedTime) -> Rect:
    """Straight corner interpolation; distorts area for aspect changes.

    Kept as the contrast case: it is what the reshape block exists to avoid.
    """
    return Rect(lerp(init.x_min, final.x_min, u), lerp(init.x_max, final.x_max, u),
                lerp(init.y_min, final.y_min, u), lerp(init.y_max, final.y_max, u))


@dataclass(frozen=True)
class TransferSpec:
    """Communicating containers: fixed widths, balanced level endpoints.

    The weighted level sums at both endpoints must agree (the per-container
    variations cancel: sum of width * delta = 0), so linear interpolation of
    every level keeps the total area constant.
    """

    containers: tuple[tuple[float, float, float], ...]  # (width, level0, level1)
    total_area: float = 0.0

    def __post_init__(self):
        if not self.containers:
            raise DomainError("transfer needs at least one container")
        for width, lvl0, lvl1 in self.containers:
            if width <= 0.0:
                raise DomainError(f"container width {width} must be positive")
            if lvl0 < 0.0 or lvl1 < 0.0:
                raise DomainError("levels must be non-negative")
        a0 = sum(w * l0 for w, l0, _ in self.containers)
        a1 = sum(w * l1 for w, _, l1 in self.containers)
        if abs(a0 - a1) > AREA_REL_TOL * max(abs(a0), abs(a1), 1e-300):
            raise AreaMismatch(
                f"endpoint areas differ: {a0} vs {a1}; width-weighted deltas must cancel")
        object.__setattr__(self, "total_area", a0)


def transfer_at(spec: TransferSpec, u: EasedTime) -> list[float]:
    """Levels at eased time u; the width-weighted sum stays at total_area."""
    return [lerp(l0, l1, u) for _, l0, l1 in spec.containers]


@dataclass(frozen=True)
class SegmentStack:
    """Bottom-to-top liquid segments sharing one container column."""

    width: float
    segments: tuple[tuple[str, float], ...]  # (liquid_id, height)

    def __post_init__(self):
        if self.width <= 0.0:
            raise DomainError(f"stack width {self.width} must be positive")
        for _, height in self.segments:
            if height < 0.0:
                raise DomainError("segment heights must be non-negative")

    @property
    def total_height(self) -> float:
        return sum(h for _, h in self.segments)

    def liquid_height(self, liquid_id: str) -> float:
        return sum(h for lid, h in self.segments if lid == liquid_id)


def segments_shift_at(stack: SegmentStack, selected: str, u: EasedTime) -> SegmentStack:
    """Move the selected liquid to the bottom through hidden pipes.

    A new bottom segment grows to u times the selected liquid's total height
    while every original selected segment shrinks by the factor (1-u);
    other liquids keep their exact heights and relative order, so the total
    height and every per-liquid area are unchanged.
    """
    ids = {lid for lid, _ in stack.segments}
    if selected not in ids:
        raise UnknownLiquid(f"liquid {selected!r} not present in the stack")
    h_sel = stack.liquid_height(selected)

    raw: list[tuple[str, float]] = [
        (lid, (1.0 - u) * height if lid == selected else height)
        for lid, height in stack.segments]
    bottom = u * h_sel
    if bottom > 0.0:
        # a selected segment already at the bottom absorbs the piped liquid
        if raw and raw[0][0] == selected:
            raw[0] = (selected, raw[0][1] + bottom)
        else:
            raw.insert(0, (selected, bottom))
    return SegmentStack(stack.width,
                        tuple((lid, h) for lid, h in raw if h > 0.0))


def stack_rects(stack: SegmentStack, x_min: float, y_base: float) -> list[tuple[str, Rect]]:
    """Chart rects for a stack standing at x_min on the baseline y_base."""
    out = []
    y = y_base
    for lid, height in stack.segments:
        if height > 0.0:
            out.append((lid, Rect(x_min, x_min + stack.width, y, y + height)))
        y += height
    return out
