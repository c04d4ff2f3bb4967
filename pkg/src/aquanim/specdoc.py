"""Transition spec documents: parsing, validation, and planning dispatch.

A spec document pairs a chart (inline data or a dataset path) with a
transition kind and render settings. Document problems raise SpecError
(malformed / unknown kinds); engine precondition failures bubble up as
AquanimError so callers can map them to distinct exit or status codes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .charts import ConfusionMatrix, Histogram, StackedBarChart, histogram_from_samples
from .datasets import load_confusion_csv, load_samples, load_stacked_csv
from .errors import ParseError, SpecError
from .palette import Palette, load_palette
from .render import RenderConfig
from .transitions import (
    TransitionScript,
    plan_fluctuation_to_mosaic,
    plan_histogram_data_change,
    plan_histogram_rebin,
    plan_histogram_rebin_diffusive,
    plan_proportion_tip,
    plan_stacked_horizontal_reorder,
    plan_stacked_vertical_reorder,
)
from .verify import corrupt_script

TRANSITION_SCHEMAS: dict[str, dict[str, Any]] = {
    "histogram_data_change": {
        "chart": "histogram",
        "params": {"new_counts": {"type": "array", "items": "number", "required": True}},
    },
    "histogram_rebin": {
        "chart": "histogram",
        "params": {"new_bin_count": {"type": "integer", "minimum": 1, "required": False},
                   "new_edges": {"type": "array", "items": "number", "required": False},
                   "new_densities": {"type": "array", "items": "number", "required": False}},
    },
    "histogram_rebin_diffusive": {
        "chart": "histogram",
        "params": {"new_bin_count": {"type": "integer", "minimum": 1, "required": False},
                   "new_edges": {"type": "array", "items": "number", "required": False},
                   "new_densities": {"type": "array", "items": "number", "required": False},
                   "steps": {"type": "integer", "minimum": 1, "required": True},
                   "alpha": {"type": "number", "minimum": 0, "maximum": 1,
                             "required": False}},
    },
    "proportion_tip": {
        "chart": "histogram",
        "params": {"selected_bins": {"type": "array", "items": "integer",
                                     "required": True}},
    },
    "stacked_vertical_reorder": {
        "chart": "stacked_bars",
        "params": {"level": {"type": "string", "required": True}},
    },
    "stacked_horizontal_reorder": {
        "chart": "stacked_bars",
        "params": {"moving_category": {"type": "string", "required": True},
                   "target_position": {"type": "integer", "minimum": 0,
                                       "required": True}},
    },
    "fluctuation_to_mosaic": {
        "chart": "confusion_matrix",
        "params": {},
    },
}


def parse_spec_text(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
    if not isinstance(doc, dict):
        raise SpecError("spec document must be a JSON object")
    return doc


def load_spec_doc(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read spec {path}: {exc}")
    return parse_spec_text(text)


def _require(mapping: Mapping, key: str, context: str):
    if key not in mapping:
        raise SpecError(f"{context} is missing required field {key!r}")
    return mapping[key]


def _resolve(path_value: str, base_dir: Path | None) -> Path:
    path = Path(path_value)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    if not path.exists():
        raise SpecError(f"referenced dataset {path} does not exist")
    return path


class _HistogramSource:
    """Histogram plus whatever raw inputs the transitions may need."""

    def __init__(self, histogram: Histogram, counts=None, samples=None):
        self.histogram = histogram
        self.counts = counts
        self.samples = samples


def _build_histogram(chart: Mapping, base_dir: Path | None) -> _HistogramSource:
    if "edges" in chart and "densities" in chart:
        return _HistogramSource(Histogram(tuple(chart["edges"]), tuple(chart["densities"])))
    data_range = _require(chart, "range", "histogram chart")
    if not (isinstance(data_range, (list, tuple)) and len(data_range) == 2):
        raise SpecError("histogram range must be [lo, hi]")
    lo, hi = float(data_range[0]), float(data_range[1])
    if "counts" in chart:
        counts = [float(c) for c in chart["counts"]]
        total = sum(counts)
        if total <= 0:
            raise SpecError("histogram counts must have a positive total")
        width = (hi - lo) / len(counts)
        edges = tuple(lo + i * width for i in range(len(counts) + 1))
        densities = tuple(c / (total * width) for c in counts)
        return _HistogramSource(Histogram(edges, densities), counts=counts)
    samples = None
    if "samples" in chart:
        samples = [float(v) for v in chart["samples"]]
    elif "samples_path" in chart:
        samples = load_samples(_resolve(chart["samples_path"], base_dir))
    if samples is None:
        raise SpecError("histogram chart needs edges+densities, counts, samples "
                        "or samples_path")
    bin_count = int(_require(chart, "bin_count", "histogram chart"))
    hist = histogram_from_samples(samples, bin_count, (lo, hi))
    return _HistogramSource(hist, samples=samples)


def _build_stacked(chart: Mapping, base_dir: Path | None,
                   palette: Palette) -> StackedBarChart:
    if "path" in chart:
        return load_stacked_csv(_resolve(chart["path"], base_dir),
                                bar_width=float(chart.get("bar_width", 1.0)),
                                gap=float(chart.get("gap", 0.25)), palette=palette)
    categories = tuple(str(c) for c in _require(chart, "categories", "stacked chart"))
    level_names = [str(l) for l in _require(chart, "levels", "stacked chart")]
    heights = tuple(tuple(float(v) for v in row)
                    for row in _require(chart, "heights", "stacked chart"))
    levels = tuple((name, palette.categorical(i)) for i, name in enumerate(level_names))
    return StackedBarChart(categories, levels, heights,
                           float(chart.get("bar_width", 1.0)),
                           float(chart.get("gap", 0.25)))


def _build_confusion(chart: Mapping, base_dir: Path | None) -> ConfusionMatrix:
    if "path" in chart:
        return load_confusion_csv(_resolve(chart["path"], base_dir))
    labels = tuple(str(l) for l in _require(chart, "labels", "confusion chart"))
    counts = tuple(tuple(int(v) for v in row)
                   for row in _require(chart, "counts", "confusion chart"))
    return ConfusionMatrix(labels, counts)


def _rebin_target(source: _HistogramSource, params: Mapping) -> Histogram:
    if "new_bin_count" in params:
        if source.samples is None:
            raise SpecError("new_bin_count rebinning needs a sample-backed histogram")
        return histogram_from_samples(source.samples, int(params["new_bin_count"]),
                                      source.histogram.data_range)
    if "new_edges" in params and "new_densities" in params:
        return Histogram(tuple(params["new_edges"]), tuple(params["new_densities"]))
    raise SpecError("rebin transition needs new_bin_count or new_edges+new_densities")


def render_config_from(doc: Mapping) -> RenderConfig:
    render = doc.get("render", {})
    if not isinstance(render, Mapping):
        raise SpecError("render section must be an object")
    try:
        return RenderConfig(
            fps=int(render.get("fps", 30)),
            duration=float(render.get("duration", 2.0)),
            width=int(render.get("width", 800)),
            height=int(render.get("height", 600)),
            precision=int(render.get("precision", 6)),
        )
    except (TypeError, ValueError) as exc:
        raise SpecError(f"invalid render settings: {exc}")


def plan_from_doc(doc: Mapping, base_dir: Path | None = None) -> tuple[TransitionScript, RenderConfig]:
    """Build the script and render settings a document describes."""
    chart = _require(doc, "chart", "spec document")
    transition = _require(doc, "transition", "spec document")
    if not isinstance(chart, Mapping) or not isinstance(transition, Mapping):
        raise SpecError("chart and transition sections must be objects")

    kind = str(_require(transition, "kind", "transition section"))
    schema = TRANSITION_SCHEMAS.get(kind)
    if schema is None:
        raise SpecError(f"unknown transition kind {kind!r}")
    chart_kind = str(_require(chart, "kind", "chart section"))
    if chart_kind != schema["chart"]:
        raise SpecError(f"transition {kind!r} expects a {schema['chart']} chart, "
                        f"got {chart_kind!r}")
    for name, rules in schema["params"].items():
        if rules.get("required") and name not in transition:
            raise SpecError(f"transition {kind!r} is missing parameter {name!r}")

    palette_overrides = doc.get("palette")
    if palette_overrides is not None and not isinstance(palette_overrides, Mapping):
        raise SpecError("palette section must be an object of slot -> hex")
    palette = load_palette(overrides=palette_overrides)

    if kind == "histogram_data_change":
        source = _build_histogram(chart, base_dir)
        if source.counts is None:
            raise SpecError("data-change transitions need a counts-backed histogram")
        new_counts = [float(c) for c in transition["new_counts"]]
        script = plan_histogram_data_change(source.counts, new_counts,
                                            source.histogram.data_range, palette)
    elif kind == "histogram_rebin":
        source = _build_histogram(chart, base_dir)
        script = plan_histogram_rebin(source.histogram,
                                      _rebin_target(source, transition), palette)
    elif kind == "histogram_rebin_diffusive":
        source = _build_histogram(chart, base_dir)
        script = plan_histogram_rebin_diffusive(
            source.histogram, _rebin_target(source, transition),
            int(transition["steps"]), float(transition.get("alpha", 0.5)), palette)
    elif kind == "proportion_tip":
        source = _build_histogram(chart, base_dir)
        script = plan_proportion_tip(source.histogram,
                                     [int(i) for i in transition["selected_bins"]],
                                     palette)
    elif kind == "stacked_vertical_reorder":
        bars = _build_stacked(chart, base_dir, palette)
        script = plan_stacked_vertical_reorder(bars, str(transition["level"]), palette)
    elif kind == "stacked_horizontal_reorder":
        bars = _build_stacked(chart, base_dir, palette)
        script = plan_stacked_horizontal_reorder(
            bars, str(transition["moving_category"]),
            int(transition["target_position"]), palette)
    else:  # fluctuation_to_mosaic
        cm = _build_confusion(chart, base_dir)
        script = plan_fluctuation_to_mosaic(cm, palette)

    debug = doc.get("debug")
    if isinstance(debug, Mapping) and "scale_one_level" in debug:
        script = corrupt_script(script, float(debug["scale_one_level"]))

    return script, render_config_from(doc)
