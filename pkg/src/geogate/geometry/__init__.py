from .vec import Vec2, Vec3, RigidMotion2, RigidMotion3
from .predicates import collinear, parallel
from .polyomino import Polyomino, congruent_under_rotation, free_polyominoes
from .cubenet import CubeNet, LabeledCube, fold_net, free_hexominoes
from .voxel import VoxelGrid, orthographic_projections, side_views
from .visibility import AgentPose, PlacedObject, visible_sequence

__all__ = [
    "Vec2",
    "Vec3",
    "RigidMotion2",
    "RigidMotion3",
    "collinear",
    "parallel",
    "Polyomino",
    "congruent_under_rotation",
    "free_polyominoes",
    "CubeNet",
    "LabeledCube",
    "fold_net",
    "free_hexominoes",
    "VoxelGrid",
    "orthographic_projections",
    "side_views",
    "AgentPose",
    "PlacedObject",
    "visible_sequence",
]
