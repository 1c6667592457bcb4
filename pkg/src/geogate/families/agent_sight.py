"""Viewpoint matching: which first-person strip matches the marked agent's view.

Distractors are fake observer poses that see the same objects in a different
left-to-right order, so candidate strips share object count and color multiset
with the correct view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..geometry import AgentPose, PlacedObject, Vec2, visible_sequence
from ..manifest import Manifest, ParamSample
from ..rng import Stream
from .base import Candidate, CandidateSet, Family

FOV = math.radians(120)
BOX_SIZE = 0.09
CYLINDER_SIZE = 0.08
RING_RADIUS = 0.42
CENTER = Vec2(0.5, 0.5)
PLACE_REGION = (0.28, 0.72)


@dataclass
class AgentSightScene:
    objects: list[PlacedObject]
    agent: AgentPose
    fake_agents: list[AgentPose]
    palette: str


def _pose_at(angle: float) -> AgentPose:
    pos = Vec2(CENTER.x + RING_RADIUS * math.cos(angle),
               CENTER.y + RING_RADIUS * math.sin(angle))
    return AgentPose(pos, angle + math.pi, FOV)


def _strip(pose: AgentPose, objects: list[PlacedObject]) -> list[dict]:
    seq = visible_sequence(pose, objects)
    by_id = {o.object_id: o for o in objects}
    entries = []
    for oid in seq:
        obj = by_id[oid]
        dist = (obj.center - pose.position).norm()
        entries.append({
            "id": oid,
            "kind": obj.kind,
            "color": obj.color_index,
            "width": round(min(1.0, 0.18 / max(dist, 0.05)), 4),
        })
    return entries


class AgentSightFamily(Family):
    name = "agent_sight"
    allowed_distractor_kinds = ("fake_viewpoint",)

    def generate_scene(self, params: ParamSample, stream: Stream) -> AgentSightScene:
        n_box = params.values["BOX_COUNT"]
        n_cyl = params.values["CYLINDER_COUNT"]
        palette = params.values["COLOR_MAP"]
        obj_stream = stream.split("objects")
        colors = obj_stream.sample_indices(10, n_box + n_cyl)
        objects: list[PlacedObject] = []
        for i in range(n_box + n_cyl):
            kind = "box" if i < n_box else "cylinder"
            size = BOX_SIZE if kind == "box" else CYLINDER_SIZE
            placed = None
            for _ in range(200):
                c = Vec2(obj_stream.uniform(*PLACE_REGION),
                         obj_stream.uniform(*PLACE_REGION))
                gap_ok = all(
                    (c - o.center).norm() >= (size + o.size) / 2 + 0.05
                    for o in objects)
                if gap_ok:
                    placed = c
                    break
            if placed is None:
                placed = Vec2(obj_stream.uniform(*PLACE_REGION),
                              obj_stream.uniform(*PLACE_REGION))
            objects.append(PlacedObject(f"obj{i}", kind, placed, size, colors[i]))

        pose_stream = stream.split("poses")
        n = len(objects)
        agent = None
        for _ in range(100):
            cand = _pose_at(pose_stream.uniform(0.0, 2 * math.pi))
            if len(visible_sequence(cand, objects)) == n:
                agent = cand
                break
        if agent is None:
            agent = _pose_at(0.0)

        fakes: list[AgentPose] = []
        seen = {tuple(visible_sequence(agent, objects))}
        for _ in range(400):
            if len(fakes) == 3:
                break
            cand = _pose_at(pose_stream.uniform(0.0, 2 * math.pi))
            seq = tuple(visible_sequence(cand, objects))
            if len(seq) == n and seq not in seen:
                seen.add(seq)
                fakes.append(cand)
        # short fills are caught by validation, not here
        while len(fakes) < 3:
            fakes.append(_pose_at(pose_stream.uniform(0.0, 2 * math.pi)))
        return AgentSightScene(objects, agent, fakes, palette)

    def make_candidates(self, scene: AgentSightScene, params: ParamSample,
                        stream: Stream) -> CandidateSet:
        cands = [Candidate({"strip": _strip(scene.agent, scene.objects)}, "correct")]
        for fake in scene.fake_agents:
            cands.append(Candidate({"strip": _strip(fake, scene.objects)},
                                   "fake_viewpoint"))
        return CandidateSet(cands, correct_index=0)

    def candidate_true(self, scene: AgentSightScene, content: dict) -> bool:
        true_seq = visible_sequence(scene.agent, scene.objects)
        return [e["id"] for e in content["strip"]] == true_seq

    def family_checks(self, scene, cset, manifest: Manifest):
        failures = []
        gap = manifest.margin("non_intersection", 0.05)
        objs = scene.objects
        for i, a in enumerate(objs):
            for b in objs[i + 1:]:
                if (a.center - b.center).norm() < (a.size + b.size) / 2 + gap:
                    failures.append(("non_intersection",
                                     f"{a.object_id} and {b.object_id} too close"))
        n = len(objs)
        for pose, tag in [(scene.agent, "agent")] + \
                [(p, f"fake{i}") for i, p in enumerate(scene.fake_agents)]:
            if len(visible_sequence(pose, objs)) != n:
                failures.append(("full_visibility", f"{tag} does not see all objects"))
        seqs = [tuple(e["id"] for e in c.content["strip"]) for c in cset.candidates]
        if len(set(seqs)) != len(seqs):
            failures.append(("candidate_separation", "duplicate view sequences"))
        return failures

    def superficial_stats(self, content: dict) -> tuple:
        strip = content["strip"]
        return (len(strip), tuple(sorted(e["color"] for e in strip)),
                tuple(sorted(e["kind"] for e in strip)))

    def prompt_values(self, scene) -> dict[str, str]:
        return {"TARGET": "dark triangle agent"}

    def stimulus_fragments(self, scene: AgentSightScene) -> list[list[dict]]:
        prims: list[dict] = []
        for obj in scene.objects:
            if obj.kind == "box":
                h = obj.size / 2
                prims.append({"shape": "rect", "x": obj.center.x - h,
                              "y": obj.center.y - h, "w": obj.size, "h": obj.size,
                              "fill": obj.color_index, "stroke": True})
            else:
                prims.append({"shape": "circle", "cx": obj.center.x,
                              "cy": obj.center.y, "r": obj.size / 2,
                              "fill": obj.color_index, "stroke": True})
        a = scene.agent
        tip = 0.05
        pts = []
        for off in (0.0, math.radians(140), math.radians(-140)):
            ang = a.heading + off
            r = tip if off == 0.0 else tip * 0.6
            pts.append([a.position.x + r * math.cos(ang),
                        a.position.y + r * math.sin(ang)])
        prims.append({"shape": "polygon", "points": pts, "fill": "stroke",
                      "stroke": True})
        return [prims]

    def candidate_fragment(self, content: dict) -> list[dict]:
        strip = content["strip"]
        prims: list[dict] = []
        n = max(1, len(strip))
        slot = 1.0 / n
        for i, e in enumerate(strip):
            cx = (i + 0.5) * slot
            w = max(0.15, e["width"]) * slot * 0.9
            if e["kind"] == "box":
                prims.append({"shape": "rect", "x": cx - w / 2, "y": 0.5 - w / 2,
                              "w": w, "h": w, "fill": e["color"], "stroke": True})
            else:
                prims.append({"shape": "circle", "cx": cx, "cy": 0.5, "r": w / 2,
                              "fill": e["color"], "stroke": True})
        prims.append({"shape": "line", "x1": 0.02, "y1": 0.25, "x2": 0.98,
                      "y2": 0.25, "dashed": False})
        return prims
