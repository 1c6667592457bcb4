"""Unfolding: pick the flat net that folds into the painted cube shown.

Distractors either fail to fold at all (overlapping faces) or fold into a cube
whose color arrangement differs from the target; both carry the same six
colors, so only fold simulation separates them.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..geometry import CubeNet, LabeledCube, fold_net
from ..geometry.cubenet import foldable_hexominoes, free_hexominoes
from ..manifest import Manifest, ParamSample
from ..rng import Stream
from .base import Candidate, CandidateSet, Family


@dataclass
class UnfoldedScene:
    net_cells: list[tuple[int, int]]      # correct net shape
    net_labels: list[int]                 # palette color index per cell (aligned)
    palette: str

    def correct_net(self) -> CubeNet:
        return CubeNet({c: str(l) for c, l in zip(self.net_cells, self.net_labels)})

    def target_cube(self) -> LabeledCube:
        cube = fold_net(self.correct_net())
        assert cube is not None
        return cube


def _fold_mapping(cells: list[tuple[int, int]]) -> dict[tuple[int, int], str] | None:
    """cell -> cube face slot, via an id-labeled fold; None if non-folding."""
    net = CubeNet({c: f"cell{i}" for i, c in enumerate(cells)})
    cube = fold_net(net)
    if cube is None:
        return None
    by_id = {f"cell{i}": c for i, c in enumerate(cells)}
    return {by_id[label]: slot for slot, label in cube.faces.items()}


def _content(cells, labels) -> dict:
    order = sorted(range(len(cells)), key=lambda i: cells[i])
    return {"cells": [list(cells[i]) for i in order],
            "labels": [labels[i] for i in order]}


class UnfoldedFamily(Family):
    name = "unfolded"
    allowed_distractor_kinds = ("off_by_one_transform", "inconsistent_projection")

    def generate_scene(self, params: ParamSample, stream: Stream) -> UnfoldedScene:
        shape = foldable_hexominoes()[params.values["NET_INDEX"]]
        cells = sorted(shape.cells)
        colors = stream.split("colors").sample_indices(10, 6)
        return UnfoldedScene(cells, colors, params.values["COLOR_MAP"])

    def make_candidates(self, scene: UnfoldedScene, params: ParamSample,
                        stream: Stream) -> CandidateSet:
        s = stream.split("distractors")
        target = scene.target_cube()
        cands = [Candidate(_content(scene.net_cells, scene.net_labels), "correct")]
        seen = {tuple(map(tuple, cands[0].content["cells"])):
                {tuple(cands[0].content["labels"])}}

        n_foldable = min(params.values["FOLDABLE_DISTRACTORS"], 3)
        made = 0
        guard = 0
        while made < n_foldable and guard < 200:
            guard += 1
            shape = s.choice(foldable_hexominoes())
            cells = sorted(shape.cells)
            mapping = _fold_mapping(cells)
            labels = [int(target.faces[mapping[c]]) for c in cells]
            i, j = s.sample_indices(6, 2)
            labels[i], labels[j] = labels[j], labels[i]
            key, lab = tuple(map(tuple, cells)), tuple(labels)
            if lab in seen.get(key, set()):
                continue
            cand = _content(cells, labels)
            if self.candidate_true(scene, cand):
                continue        # swap landed on a rotation-equivalent cube
            seen.setdefault(key, set()).add(lab)
            cands.append(Candidate(cand, "off_by_one_transform"))
            made += 1

        non_folding = [h for h in free_hexominoes()
                       if h not in foldable_hexominoes()]
        while len(cands) < 4:
            shape = s.choice(non_folding)
            cells = sorted(shape.cells)
            labels = list(scene.net_labels)
            s.shuffle(labels)
            key, lab = tuple(map(tuple, cells)), tuple(labels)
            if lab in seen.get(key, set()):
                continue
            seen.setdefault(key, set()).add(lab)
            cands.append(Candidate(_content(cells, labels), "inconsistent_projection"))
        return CandidateSet(cands, correct_index=0)

    def candidate_true(self, scene: UnfoldedScene, content: dict) -> bool:
        net = CubeNet({tuple(c): str(l)
                       for c, l in zip(content["cells"], content["labels"])})
        cube = fold_net(net)
        return cube is not None and cube.equivalent(scene.target_cube())

    def family_checks(self, scene, cset, manifest: Manifest):
        failures = []
        if sorted(scene.net_labels) != sorted(set(scene.net_labels)):
            failures.append(("distinct_faces", "cube faces must have distinct colors"))
        for cand in cset.candidates:
            if sorted(cand.content["labels"]) != sorted(scene.net_labels):
                failures.append(("label_multiset", "candidate colors differ"))
        return failures

    def superficial_stats(self, content: dict) -> tuple:
        return (len(content["cells"]), tuple(sorted(content["labels"])))

    def stimulus_fragments(self, scene: UnfoldedScene) -> list[list[dict]]:
        cube = scene.target_cube()
        front = _axon_cube(int(cube.faces["up"]), int(cube.faces["south"]),
                           int(cube.faces["east"]))
        back = _axon_cube(int(cube.faces["down"]), int(cube.faces["north"]),
                          int(cube.faces["west"]))
        return [front, back]

    def candidate_fragment(self, content: dict) -> list[dict]:
        cells = [tuple(c) for c in content["cells"]]
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        span = max(max(xs) + 1, max(ys) + 1)
        cell = 0.8 / span
        ox = (1.0 - cell * (max(xs) + 1)) / 2
        oy = (1.0 - cell * (max(ys) + 1)) / 2
        prims = []
        for (x, y), label in zip(cells, content["labels"]):
            prims.append({"shape": "rect", "x": ox + x * cell, "y": oy + y * cell,
                          "w": cell, "h": cell, "fill": label, "stroke": True})
        return prims


def _axon_cube(top: int, front: int, side: int) -> list[dict]:
    """Axonometric cube showing three faces with the given color indices."""
    cx, cy, r = 0.5, 0.48, 0.3
    top_pts = [[cx, cy + r], [cx + r * 0.87, cy + r * 0.5],
               [cx, cy], [cx - r * 0.87, cy + r * 0.5]]
    left_pts = [[cx - r * 0.87, cy + r * 0.5], [cx, cy],
                [cx, cy - r], [cx - r * 0.87, cy - r * 0.5]]
    right_pts = [[cx, cy], [cx + r * 0.87, cy + r * 0.5],
                 [cx + r * 0.87, cy - r * 0.5], [cx, cy - r]]
    return [
        {"shape": "polygon", "points": top_pts, "fill": top, "stroke": True},
        {"shape": "polygon", "points": left_pts, "fill": front, "stroke": True},
        {"shape": "polygon", "points": right_pts, "fill": side, "stroke": True},
    ]
