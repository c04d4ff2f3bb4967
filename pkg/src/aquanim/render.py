"""Sample scripts into frames and emit deterministic SVG / keyframe documents.

All coordinate serialization goes through one canonical number formatter
(fixed precision, round-half-even, shortest form, no exponents), so repeated
renders of the same input are byte-identical.

Keyframe documents are JSON with a fixed field order, one frame per line
after the header. Their coordinates live in a y-up letterboxed pixel space
(the frame viewport uniformly scaled and centered into width x height);
consumers flip the y axis when drawing to y-down surfaces. SVG output flips
here instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import DomainError
from .geometry import Color, Frame, Rect, ScenePrimitive
from .transitions import TransitionScript, evaluate

TRANSPARENT = "#00000000"
BACKGROUND = "#FFFFFFFF"
KEYFRAME_VERSION = 1


@dataclass(frozen=True)
class RenderConfig:
    fps: int = 30
    duration: float = 2.0
    width: int = 800
    height: int = 600
    precision: int = 6

    def __post_init__(self):
        if self.fps < 1:
            raise DomainError(f"fps must be a positive integer, got {self.fps}")
        if self.duration <= 0.0:
            raise DomainError(f"duration must be positive, got {self.duration}")
        if self.width < 1 or self.height < 1:
            raise DomainError("output size must be at least 1x1 pixels")
        if self.precision < 0 or self.precision > 12:
            raise DomainError("precision must lie in 0..12")
        if round(self.fps * self.duration) < 1:
            raise DomainError("fps * duration too small: need at least the two endpoint frames")

    @property
    def frame_count(self) -> int:
        return int(round(self.fps * self.duration)) + 1


def fmt_num(value: float, precision: int = 6) -> str:
    """Shortest fixed-point form within precision; round-half-even, no exponent."""
    text = f"{value:.{precision}f}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("-0", ""):
        text = "0"
    return text


def sample_frames(script: TransitionScript, cfg: RenderConfig) -> list[Frame]:
    """round(fps*duration)+1 frames at uniform times; endpoints exact."""
    n = cfg.frame_count
    return [evaluate(script, i / (n - 1)) for i in range(n)]


class _PixelMap:
    """Uniform viewport-to-pixels mapping, centered with letterboxing.

    Non-uniform scaling would distort perceived areas, which is the one thing
    this engine exists to protect.
    """

    def __init__(self, viewport: Rect, width: int, height: int):
        self.scale = min(width / viewport.width, height / viewport.height)
        self.ox = 0.5 * (width - self.scale * viewport.width)
        self.oy = 0.5 * (height - self.scale * viewport.height)
        self.viewport = viewport
        self.height = height

    def x(self, value: float) -> float:
        return self.ox + (value - self.viewport.x_min) * self.scale

    def y_up(self, value: float) -> float:
        return self.oy + (value - self.viewport.y_min) * self.scale

    def y_down(self, value: float) -> float:
        return self.height - self.y_up(value)

    def length(self, value: float) -> float:
        return value * self.scale


def _hex_or_transparent(color: Color | None) -> str:
    return color.hex8() if color is not None else TRANSPARENT


def emit_svg(frame: Frame, cfg: RenderConfig) -> bytes:
    """One deterministic standalone SVG document for a frame."""
    m = _PixelMap(frame.viewport, cfg.width, cfg.height)
    p = cfg.precision
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cfg.width}" '
        f'height="{cfg.height}" viewBox="0 0 {cfg.width} {cfg.height}">',
        f'<rect x="0" y="0" width="{cfg.width}" height="{cfg.height}" fill="{BACKGROUND}"/>',
    ]
    for prim in frame.primitives:
        parts.append(_svg_element(prim, m, p))
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _svg_element(prim: ScenePrimitive, m: _PixelMap, p: int) -> str:
    if prim.kind in ("filled_rect", "stroked_rect"):
        r = prim.rect
        x = fmt_num(m.x(r.x_min), p)
        y = fmt_num(m.y_down(r.y_max), p)
        w = fmt_num(m.length(r.width), p)
        h = fmt_num(m.length(r.height), p)
        fill = _hex_or_transparent(prim.fill) if prim.kind == "filled_rect" else "none"
        attrs = f'x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}"'
        if prim.stroke is not None:
            attrs += (f' stroke="{prim.stroke.hex8()}"'
                      f' stroke-width="{fmt_num(m.length(prim.stroke_width), p)}"')
        return f"<rect {attrs}/>"
    if prim.kind == "line":
        x1, y1, x2, y2 = prim.points
        return ('<line '
                f'x1="{fmt_num(m.x(x1), p)}" y1="{fmt_num(m.y_down(y1), p)}" '
                f'x2="{fmt_num(m.x(x2), p)}" y2="{fmt_num(m.y_down(y2), p)}" '
                f'stroke="{_hex_or_transparent(prim.stroke)}" '
                f'stroke-width="{fmt_num(m.length(prim.stroke_width), p)}"/>')
    # label
    x, y = prim.anchor
    fill = _hex_or_transparent(prim.fill)
    return (f'<text x="{fmt_num(m.x(x), p)}" y="{fmt_num(m.y_down(y), p)}" '
            f'fill="{fill}" font-size="12" text-anchor="middle">'
            f'{escape(prim.text)}</text>')


def _keyframe_primitive(prim: ScenePrimitive, m: _PixelMap, p: int) -> str:
    if prim.kind in ("filled_rect", "stroked_rect"):
        r = prim.rect
        fill = _hex_or_transparent(prim.fill) if prim.kind == "filled_rect" else TRANSPARENT
        return ('{"kind":"rect"'
                f',"x":{fmt_num(m.x(r.x_min), p)}'
                f',"y":{fmt_num(m.y_up(r.y_min), p)}'
                f',"w":{fmt_num(m.length(r.width), p)}'
                f',"h":{fmt_num(m.length(r.height), p)}'
                f',"fill":"{fill}"'
                f',"stroke":"{_hex_or_transparent(prim.stroke)}"'
                f',"stroke_width":{fmt_num(m.length(prim.stroke_width), p)}}}')
    if prim.kind == "line":
        x1, y1, x2, y2 = prim.points
        return ('{"kind":"line"'
                f',"x1":{fmt_num(m.x(x1), p)},"y1":{fmt_num(m.y_up(y1), p)}'
                f',"x2":{fmt_num(m.x(x2), p)},"y2":{fmt_num(m.y_up(y2), p)}'
                f',"stroke":"{_hex_or_transparent(prim.stroke)}"'
                f',"stroke_width":{fmt_num(m.length(prim.stroke_width), p)}}}')
    x, y = prim.anchor
    return ('{"kind":"text"'
            f',"x":{fmt_num(m.x(x), p)},"y":{fmt_num(m.y_up(y), p)}'
            f',"text":{json.dumps(prim.text, ensure_ascii=False)}'
            f',"fill":"{_hex_or_transparent(prim.fill)}"}}')


def emit_keyframes_doc(frames: Sequence[Frame], cfg: RenderConfig) -> bytes:
    """Streaming-friendly keyframe document: header, then one frame per line."""
    if len(frames) < 2:
        raise DomainError("keyframe documents need at least 2 frames")
    p = cfg.precision
    lines = [f'{{"version":{KEYFRAME_VERSION},"fps":{cfg.fps},'
             f'"width":{cfg.width},"height":{cfg.height},"frames":[']
    for index, frame in enumerate(frames):
        m = _PixelMap(frame.viewport, cfg.width, cfg.height)
        prims = ",".join(_keyframe_primitive(prim, m, p) for prim in frame.primitives)
        comma = "," if index < len(frames) - 1 else ""
        lines.append('{"primitives":[' + prims + "]}" + comma)
    lines.append("]}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_keyframes_doc(data: bytes | str) -> dict:
    """Inverse of emit_keyframes_doc; the layout is plain JSON overall."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return json.loads(text)


def emit_animated_svg(frames: Sequence[Frame], cfg: RenderConfig) -> bytes:
    """Single SVG stepping through frames with discrete visibility animation."""
    if len(frames) < 2:
        raise DomainError("animated SVG needs at least 2 frames")
    p = cfg.precision
    n = len(frames)
    total = n / cfg.fps
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cfg.width}" '
        f'height="{cfg.height}" viewBox="0 0 {cfg.width} {cfg.height}">',
        f'<rect x="0" y="0" width="{cfg.width}" height="{cfg.height}" fill="{BACKGROUND}"/>',
    ]
    for index, frame in enumerate(frames):
        m = _PixelMap(frame.viewport, cfg.width, cfg.height)
        start = fmt_num(index / n, p)
        end = fmt_num((index + 1) / n, p)
        if index == 0:
            values, key_times = "inline;none", f"0;{end}"
        elif index == n - 1:
            values, key_times = "none;inline", f"0;{start}"
        else:
            values, key_times = "none;inline;none", f"0;{start};{end}"
        display = "inline" if index == 0 else "none"
        parts.append(f'<g display="{display}">')
        parts.append(f'<animate attributeName="display" values="{values}" '
                     f'keyTimes="{key_times}" dur="{fmt_num(total, p)}s" '
                     'calcMode="discrete" repeatCount="indefinite"/>')
        for prim in frame.primitives:
            parts.append(_svg_element(prim, m, p))
        parts.append("</g>")
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
