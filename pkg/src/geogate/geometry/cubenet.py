"""Cube nets: fold a labeled hexomino into a labeled cube, or report failure.

Folding is simulated by rolling a virtual cube across the net: the face that
touches the ground on each cell is the face that cell becomes.  If two cells
land on the same cube face the hexomino does not fold.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .polyomino import Polyomino, free_polyominoes

Cell = tuple[int, int]

FACE_SLOTS = ("down", "up", "north", "south", "east", "west")

# rolling the cube one cell over; (dx, dy) -> slot permutation
# y grows north, x grows east
_ROLLS = {
    (0, 1): {"down": "north", "north": "up", "up": "south", "south": "down",
             "east": "east", "west": "west"},
    (0, -1): {"down": "south", "south": "up", "up": "north", "north": "down",
              "east": "east", "west": "west"},
    (1, 0): {"down": "east", "east": "up", "up": "west", "west": "down",
             "north": "north", "south": "south"},
    (-1, 0): {"down": "west", "west": "up", "up": "east", "east": "down",
              "north": "north", "south": "south"},
}


def _roll(state: dict[str, str], step: Cell) -> dict[str, str]:
    perm = _ROLLS[step]
    # perm maps old slot -> new slot occupied by that face
    return {perm[slot]: face for slot, face in state.items()}


class CubeNet:
    """Hexomino with one label per cell (face colors, typically)."""

    __slots__ = ("shape", "labels")

    def __init__(self, cells_to_labels: dict[Cell, str]):
        if len(cells_to_labels) != 6:
            raise ValueError("a cube net needs exactly 6 cells")
        shape = Polyomino(cells_to_labels.keys())  # checks connectivity
        # keep labels aligned with the normalized shape
        mx = min(c[0] for c in cells_to_labels)
        my = min(c[1] for c in cells_to_labels)
        labels = {(x - mx, y - my): lab for (x, y), lab in cells_to_labels.items()}
        self.shape = shape
        self.labels = labels

    def cells(self) -> list[Cell]:
        return sorted(self.labels)


class LabeledCube:
    """Cube with one label per face, compared up to proper rotation."""

    __slots__ = ("faces",)

    def __init__(self, faces: dict[str, str]):
        if set(faces) != set(FACE_SLOTS):
            raise ValueError("need labels for all six faces")
        self.faces = dict(faces)

    def rotations(self) -> list[dict[str, str]]:
        return [{slot: self.faces[perm[slot]] for slot in FACE_SLOTS}
                for perm in _cube_rotations()]

    def equivalent(self, other: "LabeledCube") -> bool:
        target = other.faces
        return any(rot == target for rot in self.rotations())


@lru_cache(maxsize=1)
def _cube_rotations() -> tuple[dict[str, str], ...]:
    """All 24 proper rotations as slot permutations (new slot -> source slot)."""
    identity = {s: s for s in FACE_SLOTS}

    def compose(p, q):  # apply q then p
        return {slot: q[p[slot]] for slot in FACE_SLOTS}

    # quarter turns: about vertical axis (yaw) and about east axis (pitch)
    yaw = {"down": "down", "up": "up", "north": "east", "east": "south",
           "south": "west", "west": "north"}
    pitch = {"east": "east", "west": "west", "down": "north", "north": "up",
             "up": "south", "south": "down"}
    seen: dict[tuple, dict[str, str]] = {}
    frontier = [identity]
    while frontier:
        p = frontier.pop()
        key = tuple(p[s] for s in FACE_SLOTS)
        if key in seen:
            continue
        seen[key] = p
        frontier.append(compose(yaw, p))
        frontier.append(compose(pitch, p))
    assert len(seen) == 24
    return tuple(seen.values())


def fold_net(net: CubeNet) -> Optional[LabeledCube]:
    """Fold the hexomino; None if any two cells would cover the same face."""
    cells = set(net.labels)
    start = min(cells)
    state0 = {s: s for s in FACE_SLOTS}
    assigned: dict[str, str] = {}
    seen = {start}
    frontier = [(start, state0)]
    while frontier:
        cell, state = frontier.pop()
        face = state["down"]
        if face in assigned:
            return None
        assigned[face] = net.labels[cell]
        x, y = cell
        for step in _ROLLS:
            nb = (x + step[0], y + step[1])
            if nb in cells and nb not in seen:
                seen.add(nb)
                frontier.append((nb, _roll(state, step)))
    if len(assigned) != 6:
        return None
    return LabeledCube(assigned)


def folds_to_cube(shape: Polyomino) -> bool:
    """Shape-only fold check (labels irrelevant)."""
    if len(shape) != 6:
        return False
    labels = {cell: str(i) for i, cell in enumerate(sorted(shape.cells))}
    return fold_net(CubeNet(labels)) is not None


@lru_cache(maxsize=1)
def free_hexominoes() -> tuple[Polyomino, ...]:
    return free_polyominoes(6)


@lru_cache(maxsize=1)
def foldable_hexominoes() -> tuple[Polyomino, ...]:
    """The free hexominoes that fold to a cube (there are exactly 11)."""
    return tuple(h for h in free_hexominoes() if folds_to_cube(h))
