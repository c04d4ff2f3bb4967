"""Named color slots shared by planners and renderers.

Decoration colors are palette slots, not hard-coded hues, so they can be
adapted to whatever palette a chart already uses. The AQUANIM_PALETTE
environment variable may point at a JSON file of slot -> hex overrides.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Mapping

from .errors import SpecError
from .geometry import Color

PALETTE_ENV_VAR = "AQUANIM_PALETTE"

_DEFAULT_SLOTS: dict[str, str] = {
    "background": "#FFFFFFFF",
    "liquid_gray": "#B3B3B3FF",      # the neutral data liquid
    "more_data_red": "#D62728FF",    # liquid being added
    "less_data_blue": "#1F77B4FF",   # liquid being removed
    "selection_yellow": "#E6C229FF",  # selected bars in tips
    "segment_magenta": "#C21EA8FF",  # selected segments in reorders
    "container": "#4D4D4DFF",        # container outlines
    "cylinder": "#000000FF",         # reshape bounding box
    "piston": "#D62728FF",           # directly controlled edges
    "free_surface": "#2CA02CFF",     # area-constrained edges
    "target_line": "#333333FF",      # fill/empty target and reminder lines
    "contour_light": "#D0D0D0FF",    # source histogram outline
    "contour_dark": "#707070FF",     # target histogram outline
    "label": "#202020FF",
    "reference": "#9A9A9AFF",        # probability-unit square
}

# Categorical fills for class-coded squares/segments; cycled by index.
_CATEGORICAL = (
    "#E6C229CC", "#1F77B4CC", "#D62728CC", "#2CA02CCC", "#9467BDCC",
    "#8C564BCC", "#E377C2CC", "#7F7F7FCC", "#BCBD22CC", "#17BECFCC",
)


class Palette:
    """Immutable slot -> Color mapping with a categorical cycle."""

    def __init__(self, overrides: Mapping[str, str] | None = None):
        slots = dict(_DEFAULT_SLOTS)
        if overrides:
            for name, value in overrides.items():
                slots[str(name)] = str(value)
        self._colors = {name: Color.from_hex(value) for name, value in slots.items()}

    def __getitem__(self, slot: str) -> Color:
        try:
            return self._colors[slot]
        except KeyError:
            raise SpecError(f"unknown palette slot {slot!r}") from None

    def categorical(self, index: int) -> Color:
        return Color.from_hex(_CATEGORICAL[index % len(_CATEGORICAL)])


def load_palette(path: str | Path | None = None,
                 overrides: Mapping[str, str] | None = None) -> Palette:
    """Build a palette from defaults, an optional file, then explicit overrides.

    When ``path`` is None the AQUANIM_PALETTE environment variable is
    consulted; a missing variable means defaults.
    """
    merged: dict[str, str] = {}
    if path is None:
        env = os.environ.get(PALETTE_ENV_VAR)
        path = env if env else None
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise SpecError(f"palette file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecError(f"palette file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise SpecError(f"palette file {path} must hold an object of slot -> hex")
        merged.update({str(k): str(v) for k, v in data.items()})
    if overrides:
        merged.update({str(k): str(v) for k, v in overrides.items()})
    return Palette(merged)


DEFAULT_PALETTE = Palette()
