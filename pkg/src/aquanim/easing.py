"""Time-parameterized scalar interpolators.

All interpolators take already-eased progress explicitly rather than easing
internally, so staged scripts can compose local times and ease exactly once.

TimeParam: normalized time t in [0, 1].
EasedTime: eased progress u in [0, 1].
"""

from __future__ import annotations

from .errors import DegenerateExtent, DomainError

TimeParam = float
EasedTime = float

# Specs producing a piston extent below this are rejected at plan time, not
# at evaluation time: fail fast with a diagnosable error.
DEGENERATE_EXTENT_TOL = 1e-12


def ease(t: TimeParam) -> EasedTime:
    """Slow-in/slow-out cubic: u = 3t^2 - 2t^3, zero velocity at both ends."""
    if not (0.0 <= t <= 1.0):
        raise DomainError(f"time parameter {t} outside [0, 1]")
    return t * t * (3.0 - 2.0 * t)


def lerp(v0: float, v1: float, u: EasedTime) -> float:
    """(1-u)*v0 + u*v1; exactly v0 at u=0 and v1 at u=1."""
    return (1.0 - u) * v0 + u * v1


def hyperbolic_extent(area: float, length: float) -> float:
    """Free-axis extent keeping a rectangle's area invariant: area / length.

    ``length`` is the current piston-axis extent; the product
    length * hyperbolic_extent(area, length) recovers ``area`` up to floating
    rounding, so the free corner rides a hyperbola.
    """
    if area <= 0.0:
        raise DomainError(f"area must be positive, got {area}")
    if length <= DEGENERATE_EXTENT_TOL:
        raise DegenerateExtent(
            f"piston extent {length} at or below tolerance {DEGENERATE_EXTENT_TOL}")
    return area / length


def centered_pair(c0: float, c1: float, extent: float, u: EasedTime) -> tuple[float, float]:
    """Low/high free-edge positions for a pair of hyperbolic edges.

    The rectangle's midpoint along the free axis is interpolated between c0
    and c1 while the extent is pinned to ``extent``; returns
    (mid - extent/2, mid + extent/2).
    """
    if extent <= 0.0:
        raise DomainError(f"extent must be positive, got {extent}")
    mid = lerp(c0, c1, u)
    half = 0.5 * extent
    return (mid - half, mid + half)
