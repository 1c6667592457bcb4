"""Projection matching: pick the (front, side, top) views of a block solid.

Distractors move a fixed number of cells within one view, so every candidate
triple keeps the same filled-cell counts; only re-projecting the solid tells
them apart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import VoxelGrid, orthographic_projections
from ..manifest import Manifest, ParamSample
from ..rng import Stream
from ._blob import (grow_blob, isometric_fragment, lists_to_mask,
                    mask_grid_fragment, mask_to_lists, move_cells)
from .base import Candidate, CandidateSet, Family

MASK_NAMES = ("front", "side", "top")


@dataclass
class PyramidScene:
    grid: VoxelGrid
    color: int
    perturb_cells: int
    palette: str


def _content(front: np.ndarray, side: np.ndarray, top: np.ndarray,
             color: int) -> dict:
    return {"front": mask_to_lists(front), "side": mask_to_lists(side),
            "top": mask_to_lists(top), "color": color}


class PyramidFamily(Family):
    name = "pyramid"
    allowed_distractor_kinds = ("inconsistent_projection",)

    def generate_scene(self, params: ParamSample, stream: Stream) -> PyramidScene:
        n = params.values["GRID_SIZE"]
        count = max(2, round(params.values["FILL_FRACTION"] * n ** 3))
        grid = grow_blob((n, n, n), count, stream.split("blob"))
        color = stream.split("color").randint(0, 9)
        return PyramidScene(grid, color, params.values["PERTURB_CELLS"],
                            params.values["COLOR_MAP"])

    def make_candidates(self, scene: PyramidScene, params: ParamSample,
                        stream: Stream) -> CandidateSet:
        s = stream.split("distractors")
        masks = orthographic_projections(scene.grid)
        cands = [Candidate(_content(*masks, scene.color), "correct")]
        from ..canonical import content_hash
        seen = {content_hash(cands[0].content)}
        guard = 0
        while len(cands) < 4 and guard < 200:
            guard += 1
            which = s.randint(0, 2)
            k = max(1, scene.perturb_cells // 2)
            moved = move_cells(masks[which], k, s)
            if moved is None:
                moved = move_cells(masks[which], 1, s)
            if moved is None:
                continue
            triple = list(masks)
            triple[which] = moved
            cand = _content(*triple, scene.color)
            h = content_hash(cand)
            if h in seen:
                continue
            seen.add(h)
            cands.append(Candidate(cand, "inconsistent_projection"))
        return CandidateSet(cands, correct_index=0)

    def candidate_true(self, scene: PyramidScene, content: dict) -> bool:
        front, side, top = orthographic_projections(scene.grid)
        return (np.array_equal(lists_to_mask(content["front"]), front)
                and np.array_equal(lists_to_mask(content["side"]), side)
                and np.array_equal(lists_to_mask(content["top"]), top))

    def family_checks(self, scene, cset, manifest: Manifest):
        failures = []
        if not _connected(scene.grid):
            failures.append(("connectivity", "solid is not face-connected"))
        margin = int(manifest.margin("projection_margin", 2))
        truth = orthographic_projections(scene.grid)
        for cand in cset.candidates:
            if cand.near_miss_kind == "correct":
                continue
            masks = [lists_to_mask(cand.content[n]) for n in MASK_NAMES]
            dist = sum(int(np.sum(a != b)) for a, b in zip(masks, truth))
            if dist < margin:
                failures.append(("projection_margin",
                                 f"distractor only {dist} cells from truth"))
        return failures

    def superficial_stats(self, content: dict) -> tuple:
        counts = tuple(int(lists_to_mask(content[n]).sum()) for n in MASK_NAMES)
        return counts + (content["color"],)

    def stimulus_fragments(self, scene: PyramidScene) -> list[list[dict]]:
        return [isometric_fragment(scene.grid, scene.color)]

    def candidate_fragment(self, content: dict) -> list[dict]:
        prims: list[dict] = []
        for i, name in enumerate(MASK_NAMES):
            prims.extend(mask_grid_fragment(
                lists_to_mask(content[name]), content["color"],
                0.02 + i * 0.33, 0.33, 0.30))
        return prims


def _connected(grid: VoxelGrid) -> bool:
    cells = set(grid.voxels())
    if not cells:
        return False
    stack = [next(iter(sorted(cells)))]
    seen = {stack[0]}
    while stack:
        x, y, z = stack.pop()
        for d in ((1, 0, 0), (-1, 0, 0), (0, 1, 0),
                  (0, -1, 0), (0, 0, 1), (0, 0, -1)):
            nb = (x + d[0], y + d[1], z + d[2])
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)
