"""Mental rotation over polyominoes: pick the pure rotation of a base piece.

Base pieces are screened to be rotationally asymmetric and chiral, so mirror
distractors can never be reached by rotation alone and rotations of the base
are all distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..geometry import Polyomino, congruent_under_rotation, free_polyominoes
from ..manifest import Manifest, ParamSample
from ..rng import Stream
from .base import Candidate, CandidateSet, Family


@dataclass
class PolyominoScene:
    base: Polyomino
    rotation_steps: int          # quarter turns applied to get the target
    color: int
    palette: str

    @property
    def target(self) -> Polyomino:
        return self.base.rotated(self.rotation_steps)


@lru_cache(maxsize=None)
def _eligible_pieces(size: int) -> tuple[Polyomino, ...]:
    return tuple(p for p in free_polyominoes(size)
                 if p.rotation_symmetry_order() == 1 and p.is_chiral())


def _single_cell_moves(piece: Polyomino) -> list[Polyomino]:
    """All connected same-size pieces obtained by moving one cell."""
    out = []
    cells = set(piece.cells)
    boundary = set()
    for x, y in cells:
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb not in cells:
                boundary.add(nb)
    for cell in cells:
        rest = cells - {cell}
        for add in boundary:
            if add == cell:
                continue
            try:
                out.append(Polyomino(rest | {add}))
            except ValueError:
                continue
    return out


class PolyominoFamily(Family):
    name = "polyomino"
    allowed_distractor_kinds = ("mirror", "near_rotation")

    def generate_scene(self, params: ParamSample, stream: Stream) -> PolyominoScene:
        size = params.values["PIECE_SIZE"]
        pieces = _eligible_pieces(size)
        base = stream.split("piece").choice(pieces)
        steps = params.values["ROTATION_STEPS"]
        color = stream.split("color").randint(0, 9)
        return PolyominoScene(base, steps, color, params.values["COLOR_MAP"])

    def make_candidates(self, scene: PolyominoScene, params: ParamSample,
                        stream: Stream) -> CandidateSet:
        want_mirror = params.values["MIRROR_DISTRACTORS"] == "present"
        cands = [Candidate(self._content(scene.target, scene.color), "correct")]
        seen = {scene.target.cells}
        s = stream.split("distractors")

        mirror_pool = []
        mirror = scene.base.mirrored()
        for k in range(4):
            piece = mirror.rotated(k)
            if piece.cells not in seen:
                mirror_pool.append(piece)
        near_pool = []
        for piece in _single_cell_moves(scene.target) + _single_cell_moves(mirror):
            if congruent_under_rotation(scene.base, piece) is None \
                    and piece.cells not in seen:
                near_pool.append(piece)
        # deterministic ordering before the stream picks
        mirror_pool.sort(key=lambda p: tuple(sorted(p.cells)))
        near_pool.sort(key=lambda p: tuple(sorted(p.cells)))
        s.shuffle(mirror_pool)
        s.shuffle(near_pool)

        need = 5
        picks: list[tuple[Polyomino, str]] = []
        if want_mirror:
            for piece in mirror_pool[:2]:
                picks.append((piece, "mirror"))
        for piece in near_pool:
            if len(picks) >= need:
                break
            if all(piece.cells != q.cells for q, _ in picks):
                picks.append((piece, "near_rotation"))
        for piece in mirror_pool:          # backfill if near-miss pool ran dry
            if len(picks) >= need:
                break
            if all(piece.cells != q.cells for q, _ in picks):
                picks.append((piece, "mirror"))
        for piece, kind in picks[:need]:
            cands.append(Candidate(self._content(piece, scene.color), kind))
        return CandidateSet(cands, correct_index=0)

    def _content(self, piece: Polyomino, color: int) -> dict:
        return {"cells": sorted(list(c) for c in piece.cells), "color": color}

    def candidate_true(self, scene: PolyominoScene, content: dict) -> bool:
        piece = Polyomino(tuple(c) for c in content["cells"])
        return congruent_under_rotation(scene.base, piece, allow_mirror=False) is not None

    def family_checks(self, scene, cset, manifest: Manifest):
        failures = []
        if scene.base.rotation_symmetry_order() != 1:
            failures.append(("symmetry_screen", "base has rotational symmetry"))
        if not scene.base.is_chiral():
            failures.append(("symmetry_screen", "base is achiral; mirrors collapse"))
        if len(cset.candidates) != manifest.num_variants:
            failures.append(("candidate_count", "distractor pool ran dry"))
        return failures

    def superficial_stats(self, content: dict) -> tuple:
        return (len(content["cells"]), content["color"])

    def stimulus_fragments(self, scene: PolyominoScene) -> list[list[dict]]:
        return [_piece_fragment(scene.base.cells, scene.color)]

    def candidate_fragment(self, content: dict) -> list[dict]:
        return _piece_fragment([tuple(c) for c in content["cells"]], content["color"])


def _piece_fragment(cells, color: int) -> list[dict]:
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    span = max(max(xs) + 1, max(ys) + 1)
    cell = 0.8 / span
    ox = (1.0 - cell * (max(xs) + 1)) / 2
    oy = (1.0 - cell * (max(ys) + 1)) / 2
    prims = []
    for x, y in sorted(cells):
        prims.append({"shape": "rect", "x": ox + x * cell, "y": oy + y * cell,
                      "w": cell, "h": cell, "fill": color, "stroke": True})
    return prims
