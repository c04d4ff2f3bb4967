"""Axis-parallel rectangle geometry, colors and frame primitives.

Coordinates are double-precision chart-space values; y grows upward (liquid
levels are heights). Renderers flip the axis for screen output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, RangeMismatch

# Absolute tolerance when merging nearly-identical bin edges; far below any
# visible resolution, avoids sliver cells.
EDGE_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle, x_min <= x_max and y_min <= y_max."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"rect coordinate {name} must be finite, got {value!r}")
        if self.x_min > self.x_max:
            raise DomainError(f"rect has x_min {self.x_min} > x_max {self.x_max}")
        if self.y_min > self.y_max:
            raise DomainError(f"rect has y_min {self.y_min} > y_max {self.y_max}")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def center(self) -> tuple[float, float]:
        return (0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))

    def translated(self, dx: float, dy: float) -> "Rect":
        return Rect(self.x_min + dx, self.x_max + dx, self.y_min + dy, self.y_max + dy)

    def union(self, other: "Rect") -> "Rect":
        return Rect(
            min(self.x_min, other.x_min),
            max(self.x_max, other.x_max),
            min(self.y_min, other.y_min),
            max(self.y_max, other.y_max),
        )

    def expanded(self, margin: float) -> "Rect":
        return Rect(self.x_min - margin, self.x_max + margin,
                    self.y_min - margin, self.y_max + margin)

    def contains_rect(self, other: "Rect", tol: float = 1e-9) -> bool:
        return (other.x_min >= self.x_min - tol and other.x_max <= self.x_max + tol
                and other.y_min >= self.y_min - tol and other.y_max <= self.y_max + tol)


def rect_area(r: Rect) -> float:
    """Area of the rectangle; zero iff the extent is degenerate."""
    return r.width * r.height


def overlap_area(r1: Rect, r2: Rect) -> float:
    """Area of the intersection; 0 when disjoint or touching only at edges."""
    w = min(r1.x_max, r2.x_max) - max(r1.x_min, r2.x_min)
    h = min(r1.y_max, r2.y_max) - max(r1.y_min, r2.y_min)
    if w <= 0.0 or h <= 0.0:
        return 0.0
    return w * h


def union_bounds(rects: Iterable[Rect]) -> Rect:
    """Bounding box of a non-empty collection of rects."""
    it = iter(rects)
    try:
        acc = next(it)
    except StopIteration:
        raise DomainError("union_bounds of an empty collection")
    for r in it:
        acc = acc.union(r)
    return acc


def partition_intervals(edges_a: Sequence[float], edges_b: Sequence[float]) -> list[float]:
    """Union of two breakpoint sets covering the same range.

    The output contains every input edge (deduplicated within
    ``EDGE_MERGE_TOL``, keeping the smallest representative of each cluster)
    and is strictly increasing. Raises RangeMismatch when the overall ranges
    differ beyond tolerance.
    """
    _check_edges(edges_a, "edges_a")
    _check_edges(edges_b, "edges_b")
    if abs(edges_a[0] - edges_b[0]) > EDGE_MERGE_TOL or abs(edges_a[-1] - edges_b[-1]) > EDGE_MERGE_TOL:
        raise RangeMismatch(
            f"ranges differ: [{edges_a[0]}, {edges_a[-1]}] vs [{edges_b[0]}, {edges_b[-1]}]")
    merged: list[float] = []
    for edge in sorted(list(edges_a) + list(edges_b)):
        if not merged or edge - merged[-1] > EDGE_MERGE_TOL:
            merged.append(edge)
    return merged


def _check_edges(edges: Sequence[float], name: str) -> None:
    if len(edges) < 2:
        raise DomainError(f"{name} needs at least 2 entries, got {len(edges)}")
    for lo, hi in zip(edges, edges[1:]):
        if hi <= lo:
            raise DomainError(f"{name} must be strictly increasing")


@dataclass(frozen=True)
class Color:
    """RGBA color with channels in [0, 1]."""

    r: float
    g: float
    b: float
    a: float = 1.0

    def __post_init__(self):
        for name in ("r", "g", "b", "a"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise DomainError(f"color channel {name}={v} outside [0, 1]")

    def hex8(self) -> str:
        """#RRGGBBAA form, uppercase."""
        return "#%02X%02X%02X%02X" % tuple(
            int(round(c * 255.0)) for c in (self.r, self.g, self.b, self.a))

    @classmethod
    def from_hex(cls, text: str) -> "Color":
        s = text.lstrip("#")
        if len(s) == 6:
            s += "FF"
        if len(s) != 8:
            raise DomainError(f"expected #RRGGBB or #RRGGBBAA, got {text!r}")
        r, g, b, a = (int(s[i:i + 2], 16) / 255.0 for i in (0, 2, 4, 6))
        return cls(r, g, b, a)

    def mixed(self, other: "Color", fraction: float) -> "Color":
        """Linear blend toward ``other`` by ``fraction`` in [0, 1]."""
        f = fraction
        return Color(
            (1 - f) * self.r + f * other.r,
            (1 - f) * self.g + f * other.g,
            (1 - f) * self.b + f * other.b,
            (1 - f) * self.a + f * other.a,
        )


@dataclass(frozen=True)
class ScenePrimitive:
    """One drawable element; draw order equals list order (later over earlier).

    kind is one of filled_rect, stroked_rect, line, label. ``rect`` is set for
    the rect kinds, ``points`` (x1, y1, x2, y2) for lines, ``anchor`` for
    labels. ``liquid`` tags the primitive as carrying that liquid's area;
    decorations leave it None.
    """

    kind: str
    rect: Rect | None = None
    points: tuple[float, float, float, float] | None = None
    anchor: tuple[float, float] | None = None
    fill: Color | None = None
    stroke: Color | None = None
    stroke_width: float = 0.0
    text: str | None = None
    liquid: str | None = None

    def __post_init__(self):
        if self.kind in ("filled_rect", "stroked_rect"):
            if self.rect is None:
                raise DomainError(f"{self.kind} primitive needs a rect")
        elif self.kind == "line":
            if self.points is None:
                raise DomainError("line primitive needs endpoint pair")
        elif self.kind == "label":
            if self.anchor is None or self.text is None:
                raise DomainError("label primitive needs anchor and text")
        else:
            raise DomainError(f"unknown primitive kind {self.kind!r}")


def filled_rect(rect: Rect, fill: Color, liquid: str | None = None,
                stroke: Color | None = None, stroke_width: float = 0.0) -> ScenePrimitive:
    return ScenePrimitive("filled_rect", rect=rect, fill=fill, liquid=liquid,
                          stroke=stroke, stroke_width=stroke_width)


def stroked_rect(rect: Rect, stroke: Color, stroke_width: float = 0.02) -> ScenePrimitive:
    return ScenePrimitive("stroked_rect", rect=rect, stroke=stroke, stroke_width=stroke_width)


def line(x1: float, y1: float, x2: float, y2: float,
         stroke: Color, stroke_width: float = 0.02) -> ScenePrimitive:
    return ScenePrimitive("line", points=(x1, y1, x2, y2), stroke=stroke,
                          stroke_width=stroke_width)


def label(x: float, y: float, text: str, fill: Color) -> ScenePrimitive:
    return ScenePrimitive("label", anchor=(x, y), text=text, fill=fill)


@dataclass(frozen=True)
class Frame:
    """An ordered scene plus the visible chart-space window."""

    primitives: tuple[ScenePrimitive, ...]
    viewport: Rect
    meta: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.viewport.width <= 0.0 or self.viewport.height <= 0.0:
            raise DomainError("frame viewport must have positive extent in both axes")


def liquid_areas(frame: Frame) -> dict[str, float]:
    """Total area per liquid id across the frame's tagged primitives."""
    totals: dict[str, float] = {}
    for prim in frame.primitives:
        if prim.liquid is not None and prim.rect is not None:
            totals[prim.liquid] = totals.get(prim.liquid, 0.0) + rect_area(prim.rect)
    return totals


def liquid_rects(frame: Frame) -> dict[str, list[Rect]]:
    """Rects per liquid id, in draw order."""
    out: dict[str, list[Rect]] = {}
    for prim in frame.primitives:
        if prim.liquid is not None and prim.rect is not None:
            out.setdefault(prim.liquid, []).append(prim.rect)
    return out
