"""Voxel grids and orthographic silhouettes."""

from __future__ import annotations

import numpy as np

MAX_DIM = 16  # desk-scale bound; keeps brute-force oracles tractable


class VoxelGrid:
    """Boolean occupancy over an (nx, ny, nz) lattice. Axes: x east, y north, z up."""

    __slots__ = ("occupancy",)

    def __init__(self, occupancy: np.ndarray):
        occ = np.asarray(occupancy, dtype=bool)
        if occ.ndim != 3:
            raise ValueError("occupancy must be 3-dimensional")
        if any(d < 1 or d > MAX_DIM for d in occ.shape):
            raise ValueError(f"dims must be in 1..{MAX_DIM}")
        self.occupancy = occ.copy()
        self.occupancy.setflags(write=False)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.occupancy.shape  # type: ignore[return-value]

    def count(self) -> int:
        return int(self.occupancy.sum())

    def is_empty(self) -> bool:
        return not self.occupancy.any()

    def with_voxel(self, x: int, y: int, z: int, value: bool = True) -> "VoxelGrid":
        occ = self.occupancy.copy()
        occ[x, y, z] = value
        return VoxelGrid(occ)

    def voxels(self) -> list[tuple[int, int, int]]:
        return [tuple(map(int, idx)) for idx in np.argwhere(self.occupancy)]


def orthographic_projections(grid: VoxelGrid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(front, side, top) silhouettes as boolean masks.

    front: along -y (viewer north of the solid), axes (x, z)
    side:  along -x (viewer east), axes (y, z)
    top:   along -z (viewer above), axes (x, y)
    """
    if grid.is_empty():
        raise ValueError("projection of an empty grid")
    occ = grid.occupancy
    front = occ.any(axis=1)
    side = occ.any(axis=0)
    top = occ.any(axis=2)
    return front, side, top


def side_views(grid: VoxelGrid) -> list[np.ndarray]:
    """Four horizontal silhouettes, walking around the solid: from +y (north),
    +x (east), -y (south), -x (west). Each mask has axes (horizontal, z) with
    the horizontal axis running left-to-right as seen by that viewer."""
    if grid.is_empty():
        raise ValueError("views of an empty grid")
    occ = grid.occupancy
    north = occ.any(axis=1)          # (x, z); viewer at +y sees x left-to-right reversed
    east = occ.any(axis=0)           # (y, z)
    views = [
        north[::-1, :].copy(),       # from north: +x runs right-to-left
        east.copy(),                 # from east: +y runs left-to-right
        north.copy(),                # from south
        east[::-1, :].copy(),        # from west
    ]
    return views
