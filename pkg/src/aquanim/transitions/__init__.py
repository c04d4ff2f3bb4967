"""Staged transition planners and the script evaluator."""

from .script import (
    MAIN_WEIGHT,
    VIEW_WEIGHT,
    Stage,
    TransitionScript,
    constant_stage,
    evaluate,
    plan_view_change,
    rect_lerp,
    reversed_stage,
)
from .histograms import (
    plan_histogram_data_change,
    plan_histogram_rebin,
    plan_histogram_rebin_diffusive,
    plan_proportion_tip,
    tint_fraction,
)
from .stacked import plan_stacked_horizontal_reorder, plan_stacked_vertical_reorder
from .matrix import plan_fluctuation_to_mosaic

__all__ = [
    "MAIN_WEIGHT",
    "VIEW_WEIGHT",
    "Stage",
    "TransitionScript",
    "constant_stage",
    "evaluate",
    "plan_view_change",
    "rect_lerp",
    "reversed_stage",
    "plan_histogram_data_change",
    "plan_histogram_rebin",
    "plan_histogram_rebin_diffusive",
    "plan_proportion_tip",
    "plan_stacked_horizontal_reorder",
    "plan_stacked_vertical_reorder",
    "plan_fluctuation_to_mosaic",
    "tint_fraction",
]
