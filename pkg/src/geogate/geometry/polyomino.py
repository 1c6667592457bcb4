"""Polyominoes: canonical forms, congruence under rotation, enumeration."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

Cell = tuple[int, int]


def _normalize(cells: frozenset[Cell]) -> frozenset[Cell]:
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    return frozenset((x - mx, y - my) for x, y in cells)


def _connected(cells: frozenset[Cell]) -> bool:
    start = next(iter(cells))
    seen = {start}
    frontier = [start]
    while frontier:
        x, y = frontier.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return len(seen) == len(cells)


class Polyomino:
    """A 4-connected set of lattice cells, stored translation-normalized."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        cs = frozenset((int(x), int(y)) for x, y in cells)
        if not cs:
            raise ValueError("polyomino must be non-empty")
        if not _connected(cs):
            raise ValueError("polyomino cells must be 4-connected")
        object.__setattr__(self, "cells", _normalize(cs))

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyomino) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def rotated(self, quarter_turns: int) -> "Polyomino":
        """Rotate by quarter_turns * 90 degrees counterclockwise."""
        k = quarter_turns % 4
        cells = self.cells
        for _ in range(k):
            cells = frozenset((-y, x) for x, y in cells)
        return Polyomino(_normalize(cells))

    def mirrored(self) -> "Polyomino":
        return Polyomino(_normalize(frozenset((-x, y) for x, y in self.cells)))

    def rotation_symmetry_order(self) -> int:
        """Number of quarter-turn rotations mapping the piece onto itself (1, 2, or 4)."""
        order = 1
        for k in (1, 2, 3):
            if self.rotated(k) == self:
                order += 1
        return order

    def is_chiral(self) -> bool:
        """True iff no rotation maps the piece onto its mirror image."""
        return congruent_under_rotation(self, self.mirrored(), allow_mirror=False) is None

    def canonical_free(self) -> frozenset[Cell]:
        """Canonical representative under all 8 symmetries (free polyomino key)."""
        variants = []
        for k in range(4):
            r = self.rotated(k)
            variants.append(r.cells)
            variants.append(r.mirrored().cells)
        return min(variants, key=lambda cs: tuple(sorted(cs)))


def congruent_under_rotation(a: Polyomino, b: Polyomino,
                             allow_mirror: bool = False) -> Optional[int]:
    """Rotation (degrees: 0/90/180/270) mapping a onto b, else None.

    With allow_mirror, mirror images of a are tried as well; the returned
    angle then refers to the rotation applied after mirroring.
    """
    for k in range(4):
        if a.rotated(k) == b:
            return k * 90
    if allow_mirror:
        m = a.mirrored()
        for k in range(4):
            if m.rotated(k) == b:
                return k * 90
    return None


def fixed_polyominoes(size: int) -> Iterator[frozenset[Cell]]:
    """All translation-normalized polyominoes of the given size (fixed, i.e.
    rotations/reflections counted separately). Simple growth enumeration."""
    if size < 1:
        return
    seen: set[frozenset[Cell]] = set()
    frontier: set[frozenset[Cell]] = {frozenset({(0, 0)})}
    for _ in range(size - 1):
        nxt: set[frozenset[Cell]] = set()
        for shape in frontier:
            for x, y in shape:
                for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if nb not in shape:
                        nxt.add(_normalize(shape | {nb}))
        frontier = nxt
    for shape in frontier:
        if shape not in seen:
            seen.add(shape)
            yield shape


@lru_cache(maxsize=None)
def free_polyominoes(size: int) -> tuple[Polyomino, ...]:
    """Distinct free polyominoes (up to rotation and reflection) of a size."""
    reps: dict[frozenset[Cell], Polyomino] = {}
    for cells in fixed_polyominoes(size):
        p = Polyomino(cells)
        key = p.canonical_free()
        if key not in reps:
            reps[key] = Polyomino(key)
    return tuple(sorted(reps.values(), key=lambda p: tuple(sorted(p.cells))))
