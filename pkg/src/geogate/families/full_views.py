"""Projection matching: pick the four side views seen walking around a solid.

Opposite views of any solid are mirror images, so distractors perturb an
opposite pair together; every candidate stays internally consistent and keeps
the same filled-cell counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import VoxelGrid, side_views
from ..manifest import Manifest, ParamSample
from ..rng import Stream
from ._blob import (grow_blob, isometric_fragment, lists_to_mask,
                    mask_grid_fragment, mask_to_lists, move_cells)
from .base import Candidate, CandidateSet, Family
from .pyramid import _connected


@dataclass
class FullViewsScene:
    grid: VoxelGrid
    color: int
    perturb_cells: int
    palette: str


def _content(views: list[np.ndarray], color: int) -> dict:
    return {"views": [mask_to_lists(v) for v in views], "color": color}


class FullViewsFamily(Family):
    name = "full_views"
    allowed_distractor_kinds = ("inconsistent_projection",)

    def generate_scene(self, params: ParamSample, stream: Stream) -> FullViewsScene:
        n = params.values["GRID_SIZE"]
        count = max(2, round(params.values["FILL_FRACTION"] * n ** 3))
        grid = grow_blob((n, n, n), count, stream.split("blob"))
        color = stream.split("color").randint(0, 9)
        return FullViewsScene(grid, color, params.values["PERTURB_CELLS"],
                              params.values["COLOR_MAP"])

    def make_candidates(self, scene: FullViewsScene, params: ParamSample,
                        stream: Stream) -> CandidateSet:
        from ..canonical import content_hash

        s = stream.split("distractors")
        views = side_views(scene.grid)
        cands = [Candidate(_content(views, scene.color), "correct")]
        seen = {content_hash(cands[0].content)}
        guard = 0
        while len(cands) < 4 and guard < 200:
            guard += 1
            pair = s.choice([(0, 2), (1, 3)])
            k = max(1, scene.perturb_cells // 2)
            moved = move_cells(views[pair[0]], k, s)
            if moved is None:
                moved = move_cells(views[pair[0]], 1, s)
            if moved is None:
                continue
            quad = [v.copy() for v in views]
            quad[pair[0]] = moved
            quad[pair[1]] = moved[::-1, :]   # opposite view stays the mirror
            cand = _content(quad, scene.color)
            h = content_hash(cand)
            if h in seen:
                continue
            seen.add(h)
            cands.append(Candidate(cand, "inconsistent_projection"))
        return CandidateSet(cands, correct_index=0)

    def candidate_true(self, scene: FullViewsScene, content: dict) -> bool:
        truth = side_views(scene.grid)
        masks = [lists_to_mask(v) for v in content["views"]]
        return len(masks) == 4 and all(
            np.array_equal(a, b) for a, b in zip(masks, truth))

    def family_checks(self, scene, cset, manifest: Manifest):
        failures = []
        if not _connected(scene.grid):
            failures.append(("connectivity", "solid is not face-connected"))
        margin = int(manifest.margin("projection_margin", 2))
        truth = side_views(scene.grid)
        for cand in cset.candidates:
            masks = [lists_to_mask(v) for v in cand.content["views"]]
            # opposite views must mirror each other, for every candidate
            if not (np.array_equal(masks[0], masks[2][::-1, :])
                    and np.array_equal(masks[1], masks[3][::-1, :])):
                failures.append(("view_consistency",
                                 "opposite views are not mirror images"))
            if cand.near_miss_kind == "correct":
                continue
            dist = sum(int(np.sum(a != b)) for a, b in zip(masks, truth))
            if dist < margin:
                failures.append(("projection_margin",
                                 f"distractor only {dist} cells from truth"))
        return failures

    def superficial_stats(self, content: dict) -> tuple:
        counts = tuple(int(lists_to_mask(v).sum()) for v in content["views"])
        return counts + (content["color"],)

    def stimulus_fragments(self, scene: FullViewsScene) -> list[list[dict]]:
        return [isometric_fragment(scene.grid, scene.color)]

    def candidate_fragment(self, content: dict) -> list[dict]:
        prims: list[dict] = []
        for i, view in enumerate(content["views"]):
            prims.extend(mask_grid_fragment(
                lists_to_mask(view), content["color"],
                0.02 + i * 0.24, 0.37, 0.22))
        return prims
