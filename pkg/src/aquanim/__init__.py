"""aquanim: area-preserving animated transitions for area-based charts.

Liquids, not containers, encode the data; their displayed area is the
conserved quantity of every transition. The package exposes the geometric
building blocks, chart models, staged transition planners, a deterministic
SVG/keyframe renderer, a verification ledger, a CLI and an HTTP service.
"""

from .blocks import (
    FillSpec,
    ReshapeSpec,
    SegmentStack,
    TransferSpec,
    classify_reshape,
    fill_at,
    naive_vertex_lerp,
    reshape_at,
    segments_shift_at,
    shift_at,
    transfer_at,
)
from .charts import (
    ConfusionMatrix,
    FluctuationLayout,
    Histogram,
    MosaicLayout,
    ProbabilityTable,
    StackedBarChart,
    fluctuation_layout,
    histogram_from_samples,
    mosaic_layout,
    probability_table,
)
from .easing import centered_pair, ease, hyperbolic_extent, lerp
from .geometry import (
    Color,
    Frame,
    Rect,
    ScenePrimitive,
    overlap_area,
    partition_intervals,
    rect_area,
)
from .palette import DEFAULT_PALETTE, Palette, load_palette
from .render import (
    RenderConfig,
    emit_animated_svg,
    emit_keyframes_doc,
    emit_svg,
    parse_keyframes_doc,
    sample_frames,
)
from .transitions import (
    Stage,
    TransitionScript,
    evaluate,
    plan_fluctuation_to_mosaic,
    plan_histogram_data_change,
    plan_histogram_rebin,
    plan_histogram_rebin_diffusive,
    plan_proportion_tip,
    plan_stacked_horizontal_reorder,
    plan_stacked_vertical_reorder,
    plan_view_change,
)
from .verify import Violation, check_script

__version__ = "0.1.0"
