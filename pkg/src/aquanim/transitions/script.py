"""Staged transition scripts and their evaluator.

A script is an ordered list of stages; global time in [0, 1] maps onto the
stages proportionally to their duration weights and the slow-in/slow-out
easing is applied once per stage on the local time. Stages are pure frame
functions, so a script can be evaluated concurrently at many times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from ..easing import ease, lerp
from ..errors import DomainError
from ..geometry import Frame, Rect, ScenePrimitive
from ..palette import DEFAULT_PALETTE, Palette

# Default stage duration weights: view phases 1, main phases 2.
VIEW_WEIGHT = 1.0
MAIN_WEIGHT = 2.0


@dataclass(frozen=True)
class Stage:
    """One phase of a transition; frame_at maps eased local progress to a frame."""

    kind: str
    duration_weight: float
    frame_at: Callable[[float], Frame]
    conserves_area: bool = True

    def __post_init__(self):
        if self.duration_weight <= 0.0:
            raise DomainError("stage duration weight must be positive")


@dataclass(frozen=True)
class TransitionScript:
    """An evaluable staged timeline with its endpoint chart frames."""

    stages: tuple[Stage, ...]
    initial_frame: Frame
    final_frame: Frame
    palette: Palette = DEFAULT_PALETTE

    def __post_init__(self):
        if not self.stages:
            raise DomainError("a script needs at least one stage")

    def spans(self) -> list[tuple[float, float, Stage]]:
        """Global (t_start, t_end) interval of every stage."""
        total = sum(s.duration_weight for s in self.stages)
        out = []
        acc = 0.0
        for stage in self.stages:
            start = acc / total
            acc += stage.duration_weight
            out.append((start, acc / total, stage))
        if out:
            last_start, _, last_stage = out[-1]
            out[-1] = (last_start, 1.0, last_stage)
        return out

    def locate(self, t: float) -> tuple[int, float]:
        """Stage index and local time for a global time; boundaries resolve to
        the earlier stage's end (the scenes agree there by construction)."""
        spans = self.spans()
        for index, (start, end, _) in enumerate(spans):
            if t <= end or index == len(spans) - 1:
                width = end - start
                local = (t - start) / width if width > 0.0 else 1.0
                return index, min(max(local, 0.0), 1.0)
        raise AssertionError("unreachable")


def evaluate(script: TransitionScript, t: float) -> Frame:
    """Deterministic frame at global time t in [0, 1]."""
    if not (0.0 <= t <= 1.0):
        raise DomainError(f"time parameter {t} outside [0, 1]")
    index, local = script.locate(t)
    return script.stages[index].frame_at(ease(local))


def rect_lerp(r0: Rect, r1: Rect, u: float) -> Rect:
    return Rect(lerp(r0.x_min, r1.x_min, u), lerp(r0.x_max, r1.x_max, u),
                lerp(r0.y_min, r1.y_min, u), lerp(r0.y_max, r1.y_max, u))


def plan_view_change(from_viewport: Rect, to_viewport: Rect,
                     scene: Sequence[ScenePrimitive] = (),
                     weight: float = VIEW_WEIGHT,
                     meta: Mapping[str, float] | None = None) -> Stage:
    """Pan/zoom stage: the window interpolates, chart-space stays untouched."""
    if from_viewport.width <= 0 or from_viewport.height <= 0:
        raise DomainError("source viewport must have positive extent")
    if to_viewport.width <= 0 or to_viewport.height <= 0:
        raise DomainError("target viewport must have positive extent")
    prims = tuple(scene)
    frozen_meta = dict(meta or {})

    def frame_at(u: float) -> Frame:
        return Frame(prims, rect_lerp(from_viewport, to_viewport, u), frozen_meta)

    return Stage("view_change", weight, frame_at)


def constant_stage(frame: Frame, weight: float = VIEW_WEIGHT,
                   kind: str = "block_application") -> Stage:
    return Stage(kind, weight, lambda u: frame)


def reversed_stage(stage: Stage) -> Stage:
    """The same stage played backwards; used to build palindromic scripts."""
    return Stage(stage.kind, stage.duration_weight,
                 lambda u: stage.frame_at(1.0 - u), stage.conserves_area)
