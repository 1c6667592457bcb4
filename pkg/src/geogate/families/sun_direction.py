"""Shadow reading: infer the sun's compass direction from cast shadows.

Shadows are parallel-ray (sun at infinity): each footprint is extruded away
from the sun. Candidates are compass labels; distractors prefer directions
adjacent to the true one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..manifest import Manifest, ParamSample
from ..rng import Stream
from .base import Candidate, CandidateSet, Family

COMPASS = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")
# compass -> unit direction, N = +y, E = +x
_DIRS = {
    "N": (0.0, 1.0), "NE": (math.sqrt(0.5), math.sqrt(0.5)), "E": (1.0, 0.0),
    "SE": (math.sqrt(0.5), -math.sqrt(0.5)), "S": (0.0, -1.0),
    "SW": (-math.sqrt(0.5), -math.sqrt(0.5)), "W": (-1.0, 0.0),
    "NW": (-math.sqrt(0.5), math.sqrt(0.5)),
}
SHADOW_SCALE = 0.15


@dataclass
class Footprint:
    x: float
    y: float
    w: float
    h: float
    color: int

    def corners(self) -> list[tuple[float, float]]:
        return [(self.x, self.y), (self.x + self.w, self.y),
                (self.x + self.w, self.y + self.h), (self.x, self.y + self.h)]


@dataclass
class SunDirectionScene:
    footprints: list[Footprint]
    azimuth: str               # compass label of the sun
    shadow_length: float       # world units of the extrusion
    palette: str

    def shadow_polygon(self, fp: Footprint) -> list[tuple[float, float]]:
        dx, dy = _DIRS[self.azimuth]
        ox, oy = -dx * self.shadow_length, -dy * self.shadow_length
        base = fp.corners()
        moved = [(x + ox, y + oy) for x, y in base]
        return _convex_hull(base + moved)


def _convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _centroid(points: list[tuple[float, float]]) -> tuple[float, float]:
    n = len(points)
    return (sum(p[0] for p in points) / n, sum(p[1] for p in points) / n)


def azimuth_from_shadows(scene: SunDirectionScene) -> str:
    """Independent read-back: recover the sun direction from shadow geometry."""
    sx = sy = 0.0
    for fp in scene.footprints:
        fx, fy = _centroid(fp.corners())
        hx, hy = _centroid(scene.shadow_polygon(fp))
        sx += fx - hx       # shadow extends away from the sun
        sy += fy - hy
    angle = math.atan2(sy, sx)
    best = min(COMPASS, key=lambda c: _angdist(angle, math.atan2(*reversed(_DIRS[c]))))
    return best


def _angdist(a: float, b: float) -> float:
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


class SunDirectionFamily(Family):
    name = "sun_direction"
    allowed_distractor_kinds = ("misaligned_parallel",)
    candidate_style = "text"

    def generate_scene(self, params: ParamSample, stream: Stream) -> SunDirectionScene:
        count = params.values["FOOTPRINT_COUNT"]
        kind = params.values["AZIMUTH_KIND"]
        idx = params.values["AZIMUTH_INDEX"]
        azimuth = (("N", "E", "S", "W") if kind == "cardinal"
                   else ("NE", "SE", "SW", "NW"))[idx]
        length = params.values["SHADOW_LENGTH"] * SHADOW_SCALE
        fp_stream = stream.split("footprints")
        colors = fp_stream.sample_indices(10, count)
        fps: list[Footprint] = []
        for i in range(count):
            placed = None
            for _ in range(200):
                w = fp_stream.uniform(0.08, 0.16)
                h = fp_stream.uniform(0.08, 0.16)
                x = fp_stream.uniform(0.3, 0.7 - w)
                y = fp_stream.uniform(0.3, 0.7 - h)
                cand = Footprint(x, y, w, h, colors[i])
                if all(_gap(cand, other) >= 0.05 for other in fps):
                    placed = cand
                    break
            if placed is None:
                placed = Footprint(0.3 + 0.2 * i, 0.3, 0.1, 0.1, colors[i])
            fps.append(placed)
        return SunDirectionScene(fps, azimuth, length, params.values["COLOR_MAP"])

    def make_candidates(self, scene: SunDirectionScene, params: ParamSample,
                        stream: Stream) -> CandidateSet:
        true_angle = math.atan2(_DIRS[scene.azimuth][1], _DIRS[scene.azimuth][0])
        others = sorted(
            (c for c in COMPASS if c != scene.azimuth),
            key=lambda c: (_angdist(true_angle,
                                    math.atan2(_DIRS[c][1], _DIRS[c][0])), c))
        cands = [Candidate({"label": scene.azimuth}, "correct")]
        for label in others[:5]:
            cands.append(Candidate({"label": label}, "misaligned_parallel"))
        return CandidateSet(cands, correct_index=0)

    def candidate_true(self, scene: SunDirectionScene, content: dict) -> bool:
        return content["label"] == azimuth_from_shadows(scene)

    def family_checks(self, scene, cset, manifest: Manifest):
        failures = []
        gap = manifest.margin("non_intersection", 0.05)
        for i, a in enumerate(scene.footprints):
            for b in scene.footprints[i + 1:]:
                if _gap(a, b) < gap:
                    failures.append(("non_intersection", "footprints too close"))
        margin = manifest.margin("shadow_margin", 0.04)
        if scene.shadow_length < margin:
            failures.append(("shadow_margin",
                             f"shadow too short to read ({scene.shadow_length:.3f})"))
        return failures

    def superficial_stats(self, content: dict) -> tuple:
        return ("compass_label",)

    def candidate_text(self, content: dict) -> str:
        return content["label"]

    def stimulus_fragments(self, scene: SunDirectionScene) -> list[list[dict]]:
        prims: list[dict] = []
        for fp in scene.footprints:
            prims.append({"shape": "polygon", "points":
                          [list(p) for p in scene.shadow_polygon(fp)],
                          "fill": "shadow", "stroke": False})
        for fp in scene.footprints:
            prims.append({"shape": "rect", "x": fp.x, "y": fp.y, "w": fp.w,
                          "h": fp.h, "fill": fp.color, "stroke": True})
        # compass rose: north tick at the top edge
        prims.append({"shape": "line", "x1": 0.06, "y1": 0.88, "x2": 0.06,
                      "y2": 0.96, "dashed": False})
        prims.append({"shape": "polygon", "points":
                      [[0.045, 0.94], [0.075, 0.94], [0.06, 0.985]],
                      "fill": "stroke", "stroke": False})
        return [prims]


def _gap(a: Footprint, b: Footprint) -> float:
    dx = max(0.0, max(a.x, b.x) - min(a.x + a.w, b.x + b.w))
    dy = max(0.0, max(a.y, b.y) - min(a.y + a.h, b.y + b.h))
    return math.hypot(dx, dy)
