"""Dataset ingestion: numeric-sample, stacked-bars, and confusion CSV files.

Formats are minimal and diffable: one value per line for samples (optional
header), category,level,value rows for stacked bars, and a labeled integer
grid for confusion matrices (first row observed labels, first column
predicted labels).
"""

from __future__ import annotations

import csv
from pathlib import Path

from .charts import ConfusionMatrix, StackedBarChart
from .errors import ParseError, ValidationError
from .palette import DEFAULT_PALETTE, Palette


def _read_rows(path: str | Path) -> list[list[str]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return [row for row in csv.reader(text.splitlines())]


def load_samples(path: str | Path) -> list[float]:
    """One numeric value per line; a single non-numeric first line is a header."""
    rows = _read_rows(path)
    values: list[float] = []
    for lineno, row in enumerate(rows, start=1):
        if not row or not row[0].strip():
            continue
        cell = row[0].strip()
        try:
            values.append(float(cell))
        except ValueError:
            if lineno == 1 and not values:
                continue  # header
            raise ParseError(f"expected a number, got {cell!r}", line=lineno, column=1)
    if not values:
        raise ParseError("no numeric samples found", line=1)
    return values


def load_confusion_csv(path: str | Path) -> ConfusionMatrix:
    """Header row = observed labels, first column = predicted labels."""
    rows = [row for row in _read_rows(path) if any(cell.strip() for cell in row)]
    if len(rows) < 2:
        raise ParseError("confusion CSV needs a header row and at least one data row",
                         line=1)
    observed = [cell.strip() for cell in rows[0][1:] if cell.strip()]
    k = len(observed)
    predicted: list[str] = []
    counts: list[tuple[int, ...]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        if len(cells) != k + 1:
            raise ParseError(f"expected {k + 1} cells, got {len(cells)}", line=lineno)
        predicted.append(cells[0])
        parsed: list[int] = []
        for col, cell in enumerate(cells[1:], start=2):
            try:
                parsed.append(int(cell))
            except ValueError:
                raise ParseError(f"expected an integer count, got {cell!r}",
                                 line=lineno, column=col)
        counts.append(tuple(parsed))
    if len(predicted) != k:
        raise ParseError(
            f"matrix must be square: {k} observed labels vs {len(predicted)} rows",
            line=len(rows))
    if predicted != observed:
        raise ValidationError(
            f"predicted labels {predicted} must match observed labels {observed}")
    return ConfusionMatrix(tuple(predicted), tuple(counts))


def load_stacked_csv(path: str | Path, bar_width: float = 1.0, gap: float = 0.25,
                     palette: Palette = DEFAULT_PALETTE) -> StackedBarChart:
    """category,level,value rows (header optional); order of first appearance."""
    rows = [row for row in _read_rows(path) if any(cell.strip() for cell in row)]
    categories: list[str] = []
    levels: list[str] = []
    values: dict[tuple[str, str], float] = {}
    for lineno, row in enumerate(rows, start=1):
        cells = [cell.strip() for cell in row]
        if len(cells) != 3:
            raise ParseError(f"expected category,level,value, got {len(cells)} cells",
                             line=lineno)
        category, level, raw = cells
        try:
            value = float(raw)
        except ValueError:
            if lineno == 1 and not values:
                continue  # header
            raise ParseError(f"expected a number, got {raw!r}", line=lineno, column=3)
        if category not in categories:
            categories.append(category)
        if level not in levels:
            levels.append(level)
        values[(category, level)] = value
    if not values:
        raise ParseError("no stacked-bar rows found", line=1)
    heights = tuple(tuple(values.get((c, l), 0.0) for l in levels) for c in categories)
    colored = tuple((name, palette.categorical(i)) for i, name in enumerate(levels))
    return StackedBarChart(tuple(categories), colored, heights, bar_width, gap)


def load_dataset(path: str | Path, kind: str):
    """Dispatch by dataset kind: samples, stacked_bars or confusion_matrix."""
    if kind == "samples":
        return load_samples(path)
    if kind == "stacked_bars":
        return load_stacked_csv(path)
    if kind == "confusion_matrix":
        return load_confusion_csv(path)
    raise ParseError(f"unknown dataset kind {kind!r}")
