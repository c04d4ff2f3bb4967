"""Data models and static layouts for the product plots driven by transitions.

Histograms, stacked bar charts, confusion matrices with their probability
tables, fluctuation diagrams and mosaic plots. Confusion matrices follow the
convention rows = predicted classes, columns = observed classes; all derived
structures index cells as (p, o).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Sequence

import numpy as np

from .blocks import SegmentStack
from .errors import (
    DomainError,
    EmptyData,
    EmptyMatrix,
    ValidationError,
    ValueOutOfRange,
)
from .geometry import (
    Color,
    Frame,
    Rect,
    ScenePrimitive,
    filled_rect,
    label,
    line,
    rect_area,
    stroked_rect,
)
from .palette import DEFAULT_PALETTE, Palette

PROB_TOL = 1e-12
AREA_TOL = 1e-9
VIEW_MARGIN_FRAC = 0.05


def fit_viewport(bounds: Rect, margin_frac: float = VIEW_MARGIN_FRAC) -> Rect:
    """Expand bounds by a proportional margin, padding degenerate extents."""
    w = bounds.width if bounds.width > 0.0 else 1.0
    h = bounds.height if bounds.height > 0.0 else 1.0
    margin = margin_frac * max(w, h)
    return Rect(bounds.x_min - margin, bounds.x_max + margin,
                bounds.y_min - margin, bounds.y_max + margin)


def histogram_viewport(edges: Sequence[float], top: float) -> Rect:
    """Shared window formula so planner scenes and static frames agree exactly."""
    return fit_viewport(Rect(edges[0], edges[-1], 0.0, top if top > 0.0 else 1.0))


@dataclass(frozen=True)
class Histogram:
    """Equal-width bins with densities integrating to one."""

    edges: tuple[float, ...]
    densities: tuple[float, ...]

    def __post_init__(self):
        if len(self.edges) != len(self.densities) + 1:
            raise ValidationError("edges must have exactly one more entry than densities")
        widths = [hi - lo for lo, hi in zip(self.edges, self.edges[1:])]
        if any(w <= 0.0 for w in widths):
            raise ValidationError("bin edges must be strictly increasing")
        mean_w = sum(widths) / len(widths)
        if any(abs(w - mean_w) > AREA_TOL * mean_w for w in widths):
            raise ValidationError("bins must have equal widths")
        if any(d < 0.0 for d in self.densities):
            raise ValidationError("densities must be non-negative")
        area = sum(d * w for d, w in zip(self.densities, widths))
        if abs(area - 1.0) > AREA_TOL:
            raise ValidationError(f"total bar area must be 1, got {area}")

    @property
    def bin_count(self) -> int:
        return len(self.densities)

    @property
    def bin_width(self) -> float:
        return (self.edges[-1] - self.edges[0]) / self.bin_count

    @property
    def data_range(self) -> tuple[float, float]:
        return (self.edges[0], self.edges[-1])


def histogram_from_samples(values: Sequence[float], bin_count: int,
                           data_range: tuple[float, float]) -> Histogram:
    """Bin samples into an equal-width density histogram of unit area.

    Bins are half-open on the right except the last, which also includes the
    top edge.
    """
    lo, hi = data_range
    if bin_count < 1:
        raise DomainError(f"bin_count must be >= 1, got {bin_count}")
    if not lo < hi:
        raise DomainError(f"range must satisfy lo < hi, got [{lo}, {hi}]")
    if len(values) == 0:
        raise EmptyData("no samples to bin")
    arr = np.asarray(list(values), dtype=float)
    if np.any(arr < lo) or np.any(arr > hi):
        offender = arr[(arr < lo) | (arr > hi)][0]
        raise ValueOutOfRange(f"sample {offender} outside declared range [{lo}, {hi}]")
    counts, edges = np.histogram(arr, bins=bin_count, range=(lo, hi))
    width = (hi - lo) / bin_count
    densities = counts / (len(arr) * width)
    return Histogram(tuple(float(e) for e in edges), tuple(float(d) for d in densities))


@dataclass(frozen=True)
class StackedBarChart:
    """Bars on a categorical axis, each a stack of colored level segments."""

    categories: tuple[str, ...]
    levels: tuple[tuple[str, Color], ...]
    heights: tuple[tuple[float, ...], ...]  # [category][level]
    bar_width: float = 1.0
    gap: float = 0.25

    def __post_init__(self):
        if len(set(self.categories)) != len(self.categories):
            raise ValidationError("category labels must be unique")
        names = [name for name, _ in self.levels]
        if len(set(names)) != len(names):
            raise ValidationError("level labels must be unique")
        if len(self.heights) != len(self.categories):
            raise ValidationError("one height row per category required")
        for row in self.heights:
            if len(row) != len(self.levels):
                raise ValidationError("one height per (category, level) required")
            if any(h < 0.0 for h in row):
                raise ValidationError("heights must be non-negative")
        if self.bar_width <= 0.0 or self.gap < 0.0:
            raise ValidationError("bar width must be positive and gap non-negative")

    @property
    def level_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.levels)

    def level_color(self, name: str) -> Color:
        for lname, color in self.levels:
            if lname == name:
                return color
        raise ValidationError(f"no level named {name!r}")

    def bar_x(self, index: int) -> float:
        return index * (self.bar_width + self.gap)

    def stack_for(self, category_index: int) -> SegmentStack:
        segments = tuple((name, self.heights[category_index][i])
                         for i, (name, _) in enumerate(self.levels))
        return SegmentStack(self.bar_width, segments)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Prediction counts; rows are predicted classes, columns observed ones."""

    labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.labels)
        if k < 1:
            raise ValidationError("at least one class label required")
        if len(self.counts) != k or any(len(row) != k for row in self.counts):
            raise ValidationError(f"counts must be {k}x{k}")
        for row in self.counts:
            for value in row:
                if value < 0 or value != int(value):
                    raise ValidationError(f"counts must be non-negative integers, got {value}")
        if self.total == 0:
            raise EmptyMatrix("confusion matrix has zero total count")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def total(self) -> int:
        return int(sum(sum(row) for row in self.counts))


@dataclass(frozen=True)
class ProbabilityTable:
    """Joint, marginal and conditional probabilities of a confusion matrix.

    All arrays index as [predicted][observed]. Conditionals are zero where
    the corresponding marginal vanishes.
    """

    joint: tuple[tuple[float, ...], ...]
    marginal_pred: tuple[float, ...]
    marginal_obs: tuple[float, ...]
    cond_obs_given_pred: tuple[tuple[float, ...], ...]
    cond_pred_given_obs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        k = len(self.marginal_pred)
        joint = np.asarray(self.joint)
        if abs(float(joint.sum()) - 1.0) > PROB_TOL:
            raise ValidationError("joint probabilities must sum to 1")
        for p in range(k):
            if self.marginal_pred[p] > 0.0:
                row_sum = sum(self.cond_obs_given_pred[p])
                if abs(row_sum - 1.0) > PROB_TOL:
                    raise ValidationError("conditional rows must sum to 1")
            for o in range(k):
                recomposed = self.cond_obs_given_pred[p][o] * self.marginal_pred[p]
                if abs(recomposed - self.joint[p][o]) > PROB_TOL:
                    raise ValidationError("joint must equal conditional times marginal")

    @property
    def size(self) -> int:
        return len(self.marginal_pred)


def probability_table(cm: ConfusionMatrix) -> ProbabilityTable:
    """Estimate the probability decomposition from raw counts."""
    counts = np.asarray(cm.counts, dtype=float)
    total = counts.sum()
    joint = counts / total
    marginal_pred = joint.sum(axis=1)
    marginal_obs = joint.sum(axis=0)
    cond_o_given_p = np.divide(joint, marginal_pred[:, None],
                               out=np.zeros_like(joint), where=marginal_pred[:, None] > 0)
    cond_p_given_o = np.divide(joint, marginal_obs[None, :],
                               out=np.zeros_like(joint), where=marginal_obs[None, :] > 0)
    as_rows = lambda a: tuple(tuple(float(x) for x in row) for row in a)
    return ProbabilityTable(
        joint=as_rows(joint),
        marginal_pred=tuple(float(x) for x in marginal_pred),
        marginal_obs=tuple(float(x) for x in marginal_obs),
        cond_obs_given_pred=as_rows(cond_o_given_p),
        cond_pred_given_obs=as_rows(cond_p_given_o),
    )


@dataclass(frozen=True)
class FluctuationLayout:
    """Grid of squares whose areas encode joint probabilities.

    Cell (p, o) sits in grid row p (top-down) and column o; row-marginal
    squares occupy a right margin column, column-marginal squares a bottom
    margin row, and the probability-unit reference square the bottom-right
    corner. Zero-probability cells carry None.
    """

    cell_size: float
    cells: tuple[tuple[Rect | None, ...], ...]
    row_margins: tuple[Rect | None, ...]
    col_margins: tuple[Rect | None, ...]
    reference: Rect

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def bounds(self) -> Rect:
        k, g = self.size, self.cell_size
        return Rect(0.0, (k + 1) * g, -g, k * g)

    def grid_slot(self, p: int, o: int) -> Rect:
        k, g = self.size, self.cell_size
        return Rect(o * g, (o + 1) * g, (k - 1 - p) * g, (k - p) * g)


def fluctuation_layout(pt: ProbabilityTable, grid_cell_size: float = 1.0) -> FluctuationLayout:
    """Squares of side sqrt(probability) centered in their grid slots."""
    if grid_cell_size <= 0.0:
        raise DomainError("grid cell size must be positive")
    k, g = pt.size, grid_cell_size

    def centered_square(slot: Rect, prob: float) -> Rect | None:
        if prob <= 0.0:
            return None
        side = sqrt(prob) * g
        cx, cy = slot.center
        return Rect(cx - side / 2, cx + side / 2, cy - side / 2, cy + side / 2)

    def slot(row: int, col: int) -> Rect:
        return Rect(col * g, (col + 1) * g, (k - 1 - row) * g, (k - row) * g)

    bottom_slot = lambda col: Rect(col * g, (col + 1) * g, -g, 0.0)
    cells = tuple(tuple(centered_square(slot(p, o), pt.joint[p][o]) for o in range(k))
                  for p in range(k))
    row_margins = tuple(centered_square(slot(p, k), pt.marginal_pred[p]) for p in range(k))
    col_margins = tuple(centered_square(bottom_slot(o), pt.marginal_obs[o]) for o in range(k))
    reference = centered_square(bottom_slot(k), 1.0)
    return FluctuationLayout(g, cells, row_margins, col_margins, reference)


@dataclass(frozen=True)
class MosaicLayout:
    """Unit square split into marginal bands of conditional segments.

    Bands stack top-down in predicted-class order; segments run left to right
    in observed-class order. Every segment area equals the corresponding
    joint probability.
    """

    bands: tuple[Rect | None, ...]
    segments: tuple[tuple[Rect | None, ...], ...]  # [predicted][observed]

    @property
    def size(self) -> int:
        return len(self.bands)


def mosaic_layout(pt: ProbabilityTable) -> MosaicLayout:
    k = pt.size
    bands: list[Rect | None] = []
    segments: list[tuple[Rect | None, ...]] = []
    y_top = 1.0
    for p in range(k):
        height = pt.marginal_pred[p]
        if height <= 0.0:
            bands.append(None)
            segments.append(tuple(None for _ in range(k)))
            continue
        band = Rect(0.0, 1.0, y_top - height, y_top)
        bands.append(band)
        row: list[Rect | None] = []
        x = 0.0
        for o in range(k):
            width = pt.cond_obs_given_pred[p][o]
            row.append(Rect(x, x + width, band.y_min, band.y_max) if width > 0.0 else None)
            x += width
        segments.append(tuple(row))
        y_top -= height
    return MosaicLayout(tuple(bands), tuple(segments))


# ---------------------------------------------------------------------------
# Static frames


def histogram_frame(h: Histogram, palette: Palette = DEFAULT_PALETTE,
                    liquid_id: str = "data",
                    fill: Color | None = None) -> Frame:
    color = fill if fill is not None else palette["liquid_gray"]
    prims: list[ScenePrimitive] = []
    for i, density in enumerate(h.densities):
        if density > 0.0:
            prims.append(filled_rect(Rect(h.edges[i], h.edges[i + 1], 0.0, density),
                                     color, liquid=liquid_id))
    prims.append(line(h.edges[0], 0.0, h.edges[-1], 0.0, palette["container"], 0.01))
    return Frame(tuple(prims), histogram_viewport(h.edges, max(h.densities)))


def stacked_viewport(chart: StackedBarChart, extra_slots: int = 0) -> Rect:
    """Shared window formula for stacked bar scenes and static frames."""
    pitch = chart.bar_width + chart.gap
    x_max = (len(chart.categories) - 1 + extra_slots) * pitch + chart.bar_width
    top = max((sum(row) for row in chart.heights), default=0.0)
    top = top if top > 0.0 else 1.0
    return fit_viewport(Rect(0.0, x_max, -0.15 * top, top))


def stacked_frame(chart: StackedBarChart, palette: Palette = DEFAULT_PALETTE) -> Frame:
    from .blocks import stack_rects

    top = max((sum(row) for row in chart.heights), default=0.0)
    top = top if top > 0.0 else 1.0
    prims: list[ScenePrimitive] = []
    for i, category in enumerate(chart.categories):
        stack = chart.stack_for(i)
        x = chart.bar_x(i)
        for lid, rect in stack_rects(stack, x, 0.0):
            prims.append(filled_rect(rect, chart.level_color(lid), liquid=lid))
        prims.append(label(x + chart.bar_width / 2, -0.08 * top, category,
                           palette["label"]))
    x_max = chart.bar_x(len(chart.categories) - 1) + chart.bar_width
    prims.append(line(0.0, 0.0, x_max, 0.0, palette["container"], 0.01))
    return Frame(tuple(prims), stacked_viewport(chart))


def fluctuation_frame(layout: FluctuationLayout, labels: Sequence[str],
                      palette: Palette = DEFAULT_PALETTE) -> Frame:
    """Fluctuation diagram frame; fill codes the predicted class, edge the
    observed class, margins and the unit reference square are decoration."""
    k, g = layout.size, layout.cell_size
    prims: list[ScenePrimitive] = [
        stroked_rect(Rect(0.0, k * g, 0.0, k * g), palette["container"], 0.015 * g)]
    for p in range(k):
        for o in range(k):
            cell = layout.cells[p][o]
            if cell is not None:
                prims.append(filled_rect(cell, palette.categorical(p),
                                         liquid=f"cell:{p},{o}",
                                         stroke=palette.categorical(o),
                                         stroke_width=0.02 * g))
    for p, rect in enumerate(layout.row_margins):
        if rect is not None:
            prims.append(filled_rect(rect, palette.categorical(p)))
    for o, rect in enumerate(layout.col_margins):
        if rect is not None:
            prims.append(filled_rect(rect, palette["liquid_gray"],
                                     stroke=palette.categorical(o),
                                     stroke_width=0.02 * g))
    prims.append(filled_rect(layout.reference, palette["reference"]))
    for p in range(k):
        prims.append(label(-0.4 * g, (k - 1 - p) * g + 0.5 * g, labels[p], palette["label"]))
    for o in range(k):
        prims.append(label(o * g + 0.5 * g, k * g + 0.3 * g, labels[o], palette["label"]))
    bounds = Rect(-0.8 * g, (k + 1) * g, -g, (k + 0.6) * g)
    return Frame(tuple(prims), fit_viewport(bounds))


def mosaic_frame(layout: MosaicLayout, palette: Palette = DEFAULT_PALETTE) -> Frame:
    prims: list[ScenePrimitive] = [
        stroked_rect(Rect(0.0, 1.0, 0.0, 1.0), palette["container"], 0.01)]
    for p in range(layout.size):
        for o in range(layout.size):
            seg = layout.segments[p][o]
            if seg is not None:
                prims.append(filled_rect(seg, palette.categorical(p),
                                         liquid=f"cell:{p},{o}",
                                         stroke=palette.categorical(o),
                                         stroke_width=0.01))
    return Frame(tuple(prims), fit_viewport(Rect(0.0, 1.0, 0.0, 1.0)))
