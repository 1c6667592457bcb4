"""Connected voxel blobs and count-preserving mask perturbations.

Shared by the two projection-matching families.
"""

from __future__ import annotations

import numpy as np

from ..geometry import VoxelGrid
from ..rng import Stream


def grow_blob(dims: tuple[int, int, int], count: int, stream: Stream) -> VoxelGrid:
    """Face-connected blob of `count` voxels grown from a seeded start cell."""
    nx, ny, nz = dims
    count = max(1, min(count, nx * ny * nz))
    occ = np.zeros(dims, dtype=bool)
    start = (stream.randint(0, nx - 1), stream.randint(0, ny - 1), 0)
    occ[start] = True
    frontier = set(_neighbors(start, dims))
    while occ.sum() < count and frontier:
        pick = stream.choice(sorted(frontier))
        frontier.discard(pick)
        if occ[pick]:
            continue
        occ[pick] = True
        frontier.update(nb for nb in _neighbors(pick, dims) if not occ[nb])
    return VoxelGrid(occ)


def _neighbors(cell, dims):
    x, y, z = cell
    for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0),
                       (0, -1, 0), (0, 0, 1), (0, 0, -1)):
        nx, ny, nz = x + dx, y + dy, z + dz
        if 0 <= nx < dims[0] and 0 <= ny < dims[1] and 0 <= nz < dims[2]:
            yield (nx, ny, nz)


def move_cells(mask: np.ndarray, k: int, stream: Stream) -> np.ndarray | None:
    """Flip k filled cells off and k empty cells on; None if the mask is too
    full or too empty to move that many."""
    filled = [tuple(map(int, c)) for c in np.argwhere(mask)]
    empty = [tuple(map(int, c)) for c in np.argwhere(~mask)]
    if k < 1 or len(filled) < k + 1 or len(empty) < k:
        return None
    out = mask.copy()
    for i in stream.sample_indices(len(filled), k):
        out[filled[i]] = False
    for i in stream.sample_indices(len(empty), k):
        out[empty[i]] = True
    return out


def mask_to_lists(mask: np.ndarray) -> list[list[int]]:
    return [[int(v) for v in row] for row in mask]


def lists_to_mask(rows: list[list[int]]) -> np.ndarray:
    return np.asarray(rows, dtype=bool)


def mask_grid_fragment(mask: np.ndarray, color: int, x0: float, y0: float,
                       span: float) -> list[dict]:
    """Render a (horizontal, vertical) boolean mask as a framed cell grid."""
    cols, rows = mask.shape
    cell = span / max(cols, rows)
    w, h = cell * cols, cell * rows
    ox = x0 + (span - w) / 2
    oy = y0 + (span - h) / 2
    prims = [{"shape": "rect", "x": ox, "y": oy, "w": w, "h": h,
              "fill": "background", "stroke": True}]
    for i in range(cols):
        for j in range(rows):
            if mask[i, j]:
                prims.append({"shape": "rect", "x": ox + i * cell,
                              "y": oy + j * cell, "w": cell, "h": cell,
                              "fill": color, "stroke": True})
    return prims


def isometric_fragment(grid: VoxelGrid, color: int) -> list[dict]:
    """Axonometric drawing of the solid: top, east, and north faces of each
    voxel, painted back to front."""
    pts: list[tuple[float, float]] = []

    def proj(x: float, y: float, z: float) -> tuple[float, float]:
        return (0.866 * (x - y), z - 0.5 * (x + y))

    faces = []
    for x, y, z in sorted(grid.voxels(), key=lambda v: sum(v)):
        c = {(i, j, k): proj(x + i, y + j, z + k)
             for i in (0, 1) for j in (0, 1) for k in (0, 1)}
        top = [c[0, 0, 1], c[1, 0, 1], c[1, 1, 1], c[0, 1, 1]]
        east = [c[1, 0, 0], c[1, 1, 0], c[1, 1, 1], c[1, 0, 1]]
        north = [c[0, 1, 0], c[1, 1, 0], c[1, 1, 1], c[0, 1, 1]]
        for quad in (north, east, top):
            faces.append(quad)
            pts.extend(quad)

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    scale = 0.8 / max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    cx = (max(xs) + min(xs)) / 2
    cy = (max(ys) + min(ys)) / 2

    prims = []
    for quad in faces:
        prims.append({
            "shape": "polygon",
            "points": [[0.5 + (u - cx) * scale, 0.5 + (v - cy) * scale]
                       for u, v in quad],
            "fill": color, "stroke": True,
        })
    return prims
