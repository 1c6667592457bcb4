"""2D/3D vectors and rigid motions (rotation + translation).

All values are immutable and finite; construction rejects NaN/Inf so nothing
downstream needs to re-check.  Rotations are proper (det +1), re-orthonormalized
on composition when drift exceeds 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_ORTHO_TOL = 1e-9
_DRIFT_TOL = 1e-12


def _check_finite(*vals: float) -> None:
    for v in vals:
        if not math.isfinite(v):
            raise ValueError(f"non-finite component: {v!r}")


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        _check_finite(self.x, self.y)

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        _check_finite(self.x, self.y, self.z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


@dataclass(frozen=True)
class RigidMotion2:
    """Rotation by `angle` radians followed by translation."""

    angle: float
    translation: Vec2

    def __post_init__(self):
        _check_finite(self.angle)

    @classmethod
    def identity(cls) -> "RigidMotion2":
        return cls(0.0, Vec2(0.0, 0.0))

    @classmethod
    def rotation(cls, angle: float) -> "RigidMotion2":
        return cls(angle, Vec2(0.0, 0.0))

    @classmethod
    def translation_of(cls, x: float, y: float) -> "RigidMotion2":
        return cls(0.0, Vec2(x, y))

    def apply(self, p: Vec2) -> Vec2:
        c, s = math.cos(self.angle), math.sin(self.angle)
        return Vec2(c * p.x - s * p.y + self.translation.x,
                    s * p.x + c * p.y + self.translation.y)

    def compose(self, other: "RigidMotion2") -> "RigidMotion2":
        """self after other: (self ∘ other)(p) == self(other(p))."""
        return RigidMotion2(self.angle + other.angle, self.apply(other.translation))

    def inverse(self) -> "RigidMotion2":
        c, s = math.cos(self.angle), math.sin(self.angle)
        tx, ty = self.translation.x, self.translation.y
        return RigidMotion2(-self.angle, Vec2(-(c * tx + s * ty), -(-s * tx + c * ty)))


def _orthonormalize(m: np.ndarray) -> np.ndarray:
    # nearest rotation via SVD; sign fix keeps det +1
    u, _, vt = np.linalg.svd(m)
    r = u @ vt
    if np.linalg.det(r) < 0:
        u[:, -1] *= -1
        r = u @ vt
    return r


class RigidMotion3:
    """Proper rotation matrix + translation vector."""

    __slots__ = ("rotation", "translation")

    def __init__(self, rotation: np.ndarray, translation: Vec3):
        r = np.asarray(rotation, dtype=float)
        if r.shape != (3, 3) or not np.all(np.isfinite(r)):
            raise ValueError("rotation must be a finite 3x3 matrix")
        err = np.abs(r @ r.T - np.eye(3)).max()
        if err > _ORTHO_TOL or np.linalg.det(r) < 0:
            raise ValueError("rotation part must be orthonormal with det +1")
        if err > _DRIFT_TOL:
            r = _orthonormalize(r)
        self.rotation = r
        self.rotation.setflags(write=False)
        self.translation = translation

    @classmethod
    def identity(cls) -> "RigidMotion3":
        return cls(np.eye(3), Vec3(0.0, 0.0, 0.0))

    @classmethod
    def axis_rotation(cls, axis: str, angle: float) -> "RigidMotion3":
        c, s = math.cos(angle), math.sin(angle)
        mats = {
            "x": [[1, 0, 0], [0, c, -s], [0, s, c]],
            "y": [[c, 0, s], [0, 1, 0], [-s, 0, c]],
            "z": [[c, -s, 0], [s, c, 0], [0, 0, 1]],
        }
        return cls(np.array(mats[axis], dtype=float), Vec3(0.0, 0.0, 0.0))

    def apply(self, p: Vec3) -> Vec3:
        v = self.rotation @ np.array([p.x, p.y, p.z])
        return Vec3(v[0] + self.translation.x, v[1] + self.translation.y,
                    v[2] + self.translation.z)

    def compose(self, other: "RigidMotion3") -> "RigidMotion3":
        r = self.rotation @ other.rotation
        if np.abs(r @ r.T - np.eye(3)).max() > _DRIFT_TOL:
            r = _orthonormalize(r)
        return RigidMotion3(r, self.apply(other.translation))

    def inverse(self) -> "RigidMotion3":
        rt = self.rotation.T
        t = -(rt @ np.array([self.translation.x, self.translation.y, self.translation.z]))
        return RigidMotion3(rt.copy(), Vec3(t[0], t[1], t[2]))
