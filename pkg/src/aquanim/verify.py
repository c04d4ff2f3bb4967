"""Script verification: the conservation ledger and its sibling checks.

Checks a script at sampled times for per-liquid area constancy (total liquid
area is the conserved quantity), the tint rule on stages that are allowed to
change area, occlusion-freedom between distinct liquids, endpoint fidelity
against the static charts, and scene agreement at stage boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .geometry import Frame, Rect, liquid_areas, liquid_rects, overlap_area, rect_area
from .transitions import Stage, TransitionScript, evaluate

OVERLAP_TOL = 1e-12
MERGE_TOL = 1e-9
DROP_AREA = 1e-15


@dataclass(frozen=True)
class Violation:
    check: str
    t: float | None
    liquid: str | None
    detail: str

    def __str__(self):
        where = f" at t={self.t:.6f}" if self.t is not None else ""
        who = f" liquid={self.liquid!r}" if self.liquid else ""
        return f"[{self.check}]{where}{who}: {self.detail}"


def _try_merge(a: Rect, b: Rect, tol: float) -> Rect | None:
    same_x = abs(a.x_min - b.x_min) <= tol and abs(a.x_max - b.x_max) <= tol
    same_y = abs(a.y_min - b.y_min) <= tol and abs(a.y_max - b.y_max) <= tol
    if same_x and (abs(a.y_max - b.y_min) <= tol or abs(b.y_max - a.y_min) <= tol):
        return Rect(min(a.x_min, b.x_min), max(a.x_max, b.x_max),
                    min(a.y_min, b.y_min), max(a.y_max, b.y_max))
    if same_y and (abs(a.x_max - b.x_min) <= tol or abs(b.x_max - a.x_min) <= tol):
        return Rect(min(a.x_min, b.x_min), max(a.x_max, b.x_max),
                    min(a.y_min, b.y_min), max(a.y_max, b.y_max))
    return None


def merge_adjacent(rects: list[Rect], tol: float = MERGE_TOL) -> list[Rect]:
    """Coalesce touching rects that share an extent; canonical sorted output.

    Stacked or abutting rects of one liquid are a rendering split, not a
    semantic one; comparisons run on the merged geometry.
    """
    pool = [r for r in rects if rect_area(r) > DROP_AREA]
    changed = True
    while changed:
        changed = False
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                merged = _try_merge(pool[i], pool[j], tol)
                if merged is not None:
                    pool[i] = merged
                    del pool[j]
                    changed = True
                    break
            if changed:
                break
    return sorted(pool, key=lambda r: (r.x_min, r.y_min, r.x_max, r.y_max))


def merged_liquid_rects(frame: Frame) -> dict[str, list[Rect]]:
    return {lid: merge_adjacent(rects) for lid, rects in liquid_rects(frame).items()}


def _rects_match(a: list[Rect], b: list[Rect], tol: float) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if (abs(ra.x_min - rb.x_min) > tol or abs(ra.x_max - rb.x_max) > tol
                or abs(ra.y_min - rb.y_min) > tol or abs(ra.y_max - rb.y_max) > tol):
            return False
    return True


def _frames_geometry_match(fa: Frame, fb: Frame, tol: float) -> str | None:
    """"None when the liquid geometry agrees; else a description."""
    ga, gb = merged_liquid_rects(fa), merged_liquid_rects(fb)
    for lid in sorted(set(ga) | set(gb)):
        if not _rects_match(ga.get(lid, []), gb.get(lid, []), tol):
            return f"liquid {lid!r} geometry differs"
    return None


def _viewports_match(a: Rect, b: Rect, tol: float) -> bool:
    return (abs(a.x_min - b.x_min) <= tol and abs(a.x_max - b.x_max) <= tol
            and abs(a.y_min - b.y_min) <= tol and abs(a.y_max - b.y_max) <= tol)


def check_conservation(script: TransitionScript, samples: int = 101,
                       tolerance: float = 1e-9) -> list[Violation]:
    """Per-liquid area constancy; the tint rule on area-exempt stages."""
    violations: list[Violation] = []
    reference: dict[str, float] | None = None
    for i in range(samples):
        t = i / (samples - 1) if samples > 1 else 0.0
        index, _ = script.locate(t)
        stage = script.stages[index]
        frame = evaluate(script, t)
        areas = liquid_areas(frame)
        if stage.conserves_area:
            if reference is None:
                reference = areas
                continue
            for lid in sorted(set(reference) | set(areas)):
                ref = reference.get(lid, 0.0)
                now = areas.get(lid, 0.0)
                scale = max(abs(ref), abs(now))
                if scale > 0.0 and abs(now - ref) > tolerance * scale:
                    violations.append(Violation(
                        "conservation", t, lid,
                        f"area {now!r} deviates from reference {ref!r}"))
        else:
            total = sum(areas.values())
            tint = float(frame.meta.get("tint", 0.0))
            deviates = abs(total - 1.0) > tolerance
            if deviates and tint == 0.0:
                violations.append(Violation(
                    "tint", t, None,
                    f"total area {total} deviates from 1 but tint is zero"))
            if not deviates and tint != 0.0:
                violations.append(Violation(
                    "tint", t, None,
                    f"tint {tint} is nonzero but total area {total} is unity"))
    return violations


def check_occlusion(script: TransitionScript, samples: int = 101,
                    tolerance: float = OVERLAP_TOL) -> list[Violation]:
    """Rects of distinct liquids may touch but never overlap."""
    violations: list[Violation] = []
    for i in range(samples):
        t = i / (samples - 1) if samples > 1 else 0.0
        frame = evaluate(script, t)
        tagged = [(prim.liquid, prim.rect) for prim in frame.primitives
                  if prim.liquid is not None and prim.rect is not None]
        for a in range(len(tagged)):
            for b in range(a + 1, len(tagged)):
                if tagged[a][0] == tagged[b][0]:
                    continue
                overlap = overlap_area(tagged[a][1], tagged[b][1])
                if overlap > tolerance:
                    violations.append(Violation(
                        "occlusion", t, tagged[a][0],
                        f"overlaps {tagged[b][0]!r} by {overlap}"))
                    break
            else:
                continue
            break
    return violations


def check_endpoints(script: TransitionScript, tolerance: float = 1e-9) -> list[Violation]:
    violations: list[Violation] = []
    for t, expected in ((0.0, script.initial_frame), (1.0, script.final_frame)):
        frame = evaluate(script, t)
        problem = _frames_geometry_match(frame, expected, tolerance)
        if problem is not None:
            violations.append(Violation("endpoint", t, None, problem))
        if not _viewports_match(frame.viewport, expected.viewport, tolerance):
            violations.append(Violation("endpoint", t, None, "viewport differs"))
    return violations


def check_continuity(script: TransitionScript, tolerance: float = 1e-9) -> list[Violation]:
    violations: list[Violation] = []
    spans = script.spans()
    for k in range(len(spans) - 1):
        _, boundary, stage = spans[k]
        nxt = spans[k + 1][2]
        end_frame = stage.frame_at(1.0)
        start_frame = nxt.frame_at(0.0)
        problem = _frames_geometry_match(end_frame, start_frame, tolerance)
        if problem is not None:
            violations.append(Violation("continuity", boundary, None,
                                        f"stages {k} -> {k + 1}: {problem}"))
        if not _viewports_match(end_frame.viewport, start_frame.viewport, tolerance):
            violations.append(Violation("continuity", boundary, None,
                                        f"stages {k} -> {k + 1}: viewport jumps"))
    return violations


def check_script(script: TransitionScript, samples: int = 101,
                 tolerance: float = 1e-9) -> list[Violation]:
    """Full ledger; empty result means the script honors every invariant.

    With fewer than 3 samples only the endpoints are exercised, so the
    interior-boundary continuity check is skipped.
    """
    violations = check_conservation(script, samples, tolerance)
    violations += check_occlusion(script, samples)
    violations += check_endpoints(script, tolerance)
    if samples >= 3:
        violations += check_continuity(script, tolerance)
    return violations


def corrupt_script(script: TransitionScript, factor: float) -> TransitionScript:
    """Test hook: scale one liquid level inside the middle stage.

    Produces a script that evaluates normally but violates conservation,
    exercising the detector path end to end.
    """
    stages = list(script.stages)
    mid = len(stages) // 2
    victim = stages[mid]

    def corrupted(u: float, inner=victim.frame_at) -> Frame:
        frame = inner(u)
        prims = list(frame.primitives)
        for i, prim in enumerate(prims):
            if prim.liquid is not None and prim.rect is not None:
                r = prim.rect
                prims[i] = replace(prim, rect=Rect(
                    r.x_min, r.x_max, r.y_min, r.y_min + r.height * factor))
                break
        return Frame(tuple(prims), frame.viewport, frame.meta)

    stages[mid] = Stage(victim.kind, victim.duration_weight, corrupted,
                        victim.conserves_area)
    return TransitionScript(tuple(stages), script.initial_frame,
                            script.final_frame, script.palette)
