"""Surface of revolution: pick the silhouette of a spun half-profile.

The profile is a radius ladder on evenly spaced heights; spinning it one full
turn gives a silhouette symmetric about the axis. Distractors nudge one radius
or flip the profile upside down.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..manifest import Manifest, ParamSample
from ..rng import Stream
from .base import Candidate, CandidateSet, Family

R_MIN = 0.06
R_STEP = 0.04
N_LEVELS = 10                      # radii R_MIN .. R_MIN + 9 * R_STEP
H_LO, H_HI = 0.15, 0.85


@dataclass
class RevolutionScene:
    radii: list[float]             # one per height, bottom to top
    color: int
    palette: str

    def heights(self) -> list[float]:
        n = len(self.radii)
        if n == 1:
            return [(H_LO + H_HI) / 2]
        return [H_LO + (H_HI - H_LO) * i / (n - 1) for i in range(n)]


def _direction_changes(radii: list[float]) -> int:
    signs = [1 if b > a else -1 for a, b in zip(radii, radii[1:]) if b != a]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _profile_levels(n_vertices: int, concavity: int, stream: Stream) -> list[int]:
    """Level sequence with unit steps and exactly `concavity` turning points."""
    steps = n_vertices - 1
    runs = min(concavity, steps - 1) + 1
    # split the steps into `runs` nonempty monotone runs
    cuts = sorted(stream.sample_indices(steps - 1, runs - 1)) if runs > 1 else []
    lengths = []
    prev = 0
    for c in cuts:
        lengths.append(c + 1 - prev)
        prev = c + 1
    lengths.append(steps - prev)
    direction = stream.choice([1, -1])
    path = [0]
    for length in lengths:
        for _ in range(length):
            path.append(path[-1] + direction)
        direction = -direction
    lo, hi = min(path), max(path)
    offset = stream.randint(0, (N_LEVELS - 1) - (hi - lo)) - lo
    return [p + offset for p in path]


class RevolutionFamily(Family):
    name = "revolution"
    allowed_distractor_kinds = ("off_by_one_transform", "mirror")

    def generate_scene(self, params: ParamSample, stream: Stream) -> RevolutionScene:
        n = params.values["VERTEX_COUNT"]
        levels = _profile_levels(n, params.values["CONCAVITY"],
                                 stream.split("profile"))
        radii = [round(R_MIN + R_STEP * lv, 6) for lv in levels]
        color = stream.split("color").randint(0, 9)
        return RevolutionScene(radii, color, params.values["COLOR_MAP"])

    def make_candidates(self, scene: RevolutionScene, params: ParamSample,
                        stream: Stream) -> CandidateSet:
        s = stream.split("distractors")
        cands = [Candidate(self._content(scene.radii), "correct")]
        seen = {tuple(scene.radii)}

        flipped = list(reversed(scene.radii))
        if tuple(flipped) not in seen:
            seen.add(tuple(flipped))
            cands.append(Candidate(self._content(flipped), "mirror"))

        guard = 0
        while len(cands) < 6 and guard < 200:
            guard += 1
            base = s.choice([scene.radii, flipped])
            idx = s.randint(0, len(base) - 1)
            lv = round((base[idx] - R_MIN) / R_STEP)
            moves = [d for d in (-1, 1) if 0 <= lv + d < N_LEVELS]
            radii = list(base)
            radii[idx] = round(R_MIN + R_STEP * (lv + s.choice(moves)), 6)
            if tuple(radii) in seen:
                continue
            seen.add(tuple(radii))
            cands.append(Candidate(self._content(radii), "off_by_one_transform"))
        return CandidateSet(cands, correct_index=0)

    def _content(self, radii: list[float]) -> dict:
        return {"radii": list(radii)}

    def candidate_true(self, scene: RevolutionScene, content: dict) -> bool:
        if len(content["radii"]) != len(scene.radii):
            return False
        return all(abs(a - b) < 1e-9
                   for a, b in zip(content["radii"], scene.radii))

    def family_checks(self, scene, cset, manifest: Manifest):
        failures = []
        margin = manifest.margin("profile_margin", 0.04)
        for cand in cset.candidates:
            if cand.near_miss_kind == "correct":
                continue
            radii = cand.content["radii"]
            sep = max(abs(a - b) for a, b in zip(radii, scene.radii))
            if sep < margin - 1e-9:
                failures.append(("profile_margin",
                                 f"distractor within {sep:.3f} of the truth"))
        if len(cset.candidates) != manifest.num_variants:
            failures.append(("candidate_count", "distractor pool ran dry"))
        return failures

    def superficial_stats(self, content: dict) -> tuple:
        return (len(content["radii"]),)

    def stimulus_fragments(self, scene: RevolutionScene) -> list[list[dict]]:
        hs = scene.heights()
        outline = [[0.5, hs[0]]]
        outline += [[0.5 + r, h] for r, h in zip(scene.radii, hs)]
        outline.append([0.5, hs[-1]])
        prims = [
            {"shape": "polygon", "points": outline, "fill": scene.color,
             "stroke": True},
            {"shape": "line", "x1": 0.5, "y1": 0.06, "x2": 0.5, "y2": 0.94,
             "dashed": True},
        ]
        return [prims]

    def candidate_fragment(self, content: dict) -> list[dict]:
        radii = content["radii"]
        n = len(radii)
        hs = ([(H_LO + H_HI) / 2] if n == 1 else
              [H_LO + (H_HI - H_LO) * i / (n - 1) for i in range(n)])
        right = [[0.5 + r, h] for r, h in zip(radii, hs)]
        left = [[0.5 - r, h] for r, h in zip(reversed(radii), reversed(hs))]
        return [{"shape": "polygon", "points": right + left, "fill": "shadow",
                 "stroke": True}]
