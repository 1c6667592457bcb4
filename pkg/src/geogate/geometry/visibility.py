"""Ray-cast visibility: what an agent sees, left to right.

Objects are opaque convex footprints (axis-aligned rectangles and circles).
An object is visible when its angular extent intersects the view frustum and
no single strictly-nearer object's angular extent fully covers it; partial
occlusion counts as visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .vec import Vec2


@dataclass(frozen=True)
class AgentPose:
    position: Vec2
    heading: float          # radians, world frame
    fov: float              # radians, full angle

    def __post_init__(self):
        if not (0.0 < self.fov < math.pi):
            raise ValueError("field of view must be in (0, pi)")


@dataclass(frozen=True)
class PlacedObject:
    object_id: str
    kind: str               # "box" | "cylinder"
    center: Vec2
    size: float             # box edge length, or cylinder diameter
    color_index: int = 0

    def corners(self) -> list[Vec2]:
        h = self.size / 2.0
        cx, cy = self.center.x, self.center.y
        return [Vec2(cx - h, cy - h), Vec2(cx + h, cy - h),
                Vec2(cx + h, cy + h), Vec2(cx - h, cy + h)]


def _wrap(a: float) -> float:
    return (a + math.pi) % (2.0 * math.pi) - math.pi


def _angular_interval(agent: AgentPose, obj: PlacedObject) -> tuple[float, float, float] | None:
    """(lo, hi, distance) of the object's angular extent relative to the agent
    heading; None when the agent is inside the footprint. Intervals stay within
    (-pi, pi] and objects spanning the +-pi cut are handled by the caller only
    through frustum-sized extents, which never wrap for fov < pi objects in view.
    """
    d = obj.center - agent.position
    dist = d.norm()
    if obj.kind == "cylinder":
        r = obj.size / 2.0
        if dist <= r:
            return None
        half = math.asin(min(1.0, r / dist))
        mid = _wrap(d.angle() - agent.heading)
        return (mid - half, mid + half, dist)
    # box: use corner angles around the center direction
    mid = _wrap(d.angle() - agent.heading)
    rel = []
    for c in obj.corners():
        v = c - agent.position
        if v.norm() == 0.0:
            return None
        rel.append(_wrap(v.angle() - agent.heading - mid))
    if max(abs(a) for a in rel) >= math.pi / 2.0:
        return None  # agent inside or touching the box
    return (mid + min(rel), mid + max(rel), dist)


def visible_sequence(agent: AgentPose, objects: list[PlacedObject]) -> list[str]:
    """Ids of visible objects ordered left to right in the agent frame."""
    half_fov = agent.fov / 2.0
    entries = []
    for obj in objects:
        iv = _angular_interval(agent, obj)
        if iv is None:
            continue
        lo, hi, dist = iv
        if hi < -half_fov or lo > half_fov:
            continue
        entries.append((obj, lo, hi, dist))
    visible = []
    for obj, lo, hi, dist in entries:
        occluded = any(
            o2 is not obj and d2 < dist and lo2 <= lo and hi <= hi2
            for o2, lo2, hi2, d2 in entries
        )
        if not occluded:
            mid = (lo + hi) / 2.0
            visible.append((mid, obj.object_id))
    # left first: larger relative angle is further left (counterclockwise)
    visible.sort(key=lambda t: (-t[0], t[1]))
    return [oid for _, oid in visible]
