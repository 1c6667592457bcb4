"""Scalar geometric predicates used by scene validators."""

from __future__ import annotations

import math

from .vec import Vec2


def collinear(points: list[Vec2], tolerance: float = 1e-9) -> bool:
    """True iff the max perpendicular distance to the best-fit line <= tolerance.

    The best-fit line is the total-least-squares line through the centroid
    (principal axis of the point cloud), so the result is invariant under
    rigid motions of the whole point set.
    """
    if len(points) < 2:
        raise ValueError("collinear requires at least 2 points")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = len(points)
    cx = sum(p.x for p in points) / n
    cy = sum(p.y for p in points) / n
    sxx = sum((p.x - cx) ** 2 for p in points)
    syy = sum((p.y - cy) ** 2 for p in points)
    sxy = sum((p.x - cx) * (p.y - cy) for p in points)
    # principal direction of the 2x2 scatter matrix
    theta = 0.5 * math.atan2(2.0 * sxy, sxx - syy)
    dx, dy = math.cos(theta), math.sin(theta)
    worst = max(abs(-(p.x - cx) * dy + (p.y - cy) * dx) for p in points)
    return worst <= tolerance


def parallel(seg_a: tuple[Vec2, Vec2], seg_b: tuple[Vec2, Vec2],
             angular_tolerance: float = 1e-9) -> bool:
    """True iff the absolute angle between directions (mod pi) <= tolerance."""
    da = seg_a[1] - seg_a[0]
    db = seg_b[1] - seg_b[0]
    if da.norm() == 0.0 or db.norm() == 0.0:
        raise ValueError("parallel requires non-degenerate segments")
    diff = (da.angle() - db.angle()) % math.pi
    diff = min(diff, math.pi - diff)
    return diff <= angular_tolerance
