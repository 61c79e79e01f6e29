"""Quaternion algebra and conversion to 3x3 rotation matrices.

Conventions:
- Scalar-first Hamilton quaternions q = w + x*i + y*j + z*k with
  i^2 = j^2 = k^2 = ijk = -1.
- Rotation matrices are row-major numpy arrays acting on column vectors,
  R @ v. Conversion normalizes its input first, so only the direction of
  q matters and q / -q produce the identical matrix.
- All operations are pure functions on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroNorm

# Pairwise algebra identities (products, inverses, sandwich) hold to this
# tolerance; rotation-matrix level checks (orthogonality, determinant) to
# the looser one.
ALGEBRA_TOL = 1e-12
MATRIX_TOL = 1e-9


@dataclass(frozen=True)
class Quaternion:
    """Quaternion with real scalar part w and vector part (x, y, z)."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        for c in (self.w, self.x, self.y, self.z):
            if not math.isfinite(c):
                raise ValueError(f"quaternion components must be finite, got {c!r}")

    def components(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)


IDENTITY = Quaternion(1.0, 0.0, 0.0, 0.0)


def quat_add(p: Quaternion, q: Quaternion) -> Quaternion:
    """Componentwise sum."""
    return Quaternion(p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z)


def quat_scale(a: float, q: Quaternion) -> Quaternion:
    """Scale every component by a."""
    return Quaternion(a * q.w, a * q.x, a * q.y, a * q.z)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p * q. Not commutative: i*j = k but j*i = -k."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def quat_conjugate(q: Quaternion) -> Quaternion:
    """Flip the sign of the vector part."""
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def quat_norm(q: Quaternion) -> float:
    """Euclidean norm of the four components."""
    return math.sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z)


def quat_normalize(q: Quaternion) -> Quaternion:
    """Scale q to unit norm.

    Raises ZeroNorm for the zero quaternion; callers must not feed the
    result of a degenerate input into the rotation conversion.
    """
    n = quat_norm(q)
    if n == 0.0:
        raise ZeroNorm("cannot normalize the zero quaternion")
    return Quaternion(q.w / n, q.x / n, q.y / n, q.z / n)


def quat_inverse(q: Quaternion) -> Quaternion:
    """Multiplicative inverse: conjugate(q) / |q|^2."""
    n = quat_norm(q)
    if n == 0.0:
        raise ZeroNorm("the zero quaternion has no inverse")
    n2 = n * n
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def imag_dot(p: Quaternion, q: Quaternion) -> float:
    """Dot product of the vector parts."""
    return p.x * q.x + p.y * q.y + p.z * q.z


def imag_cross(p: Quaternion, q: Quaternion) -> np.ndarray:
    """Cross product of the vector parts as a length-3 array."""
    return np.array(
        [
            p.y * q.z - p.z * q.y,
            p.z * q.x - p.x * q.z,
            p.x * q.y - p.y * q.x,
        ]
    )


def quat_to_rotation_matrix(q: Quaternion) -> np.ndarray:
    """Rotation matrix of the unit quaternion along q.

    q is normalized first; the matrix is assembled as the sum of three
    parts evaluated at the unit components (w, x, y, z):

        (w^2 - x^2 - y^2 - z^2) * I  +  2w * [v]x  +  2 * v v^T

    with [v]x the skew matrix of the vector part. For unit input the
    result is orthogonal with determinant +1 to within MATRIX_TOL.
    """
    u = quat_normalize(q)
    w, x, y, z = u.w, u.x, u.y, u.z
    s = w * w - x * x - y * y - z * z
    diagonal = np.array([[s, 0.0, 0.0], [0.0, s, 0.0], [0.0, 0.0, s]])
    skew = np.array(
        [
            [0.0, -2.0 * w * z, 2.0 * w * y],
            [2.0 * w * z, 0.0, -2.0 * w * x],
            [-2.0 * w * y, 2.0 * w * x, 0.0],
        ]
    )
    outer = np.array(
        [
            [2.0 * x * x, 2.0 * x * y, 2.0 * x * z],
            [2.0 * x * y, 2.0 * y * y, 2.0 * y * z],
            [2.0 * x * z, 2.0 * y * z, 2.0 * z * z],
        ]
    )
    return diagonal + skew + outer


def rotate_vector(q: Quaternion, v) -> np.ndarray:
    """Rotate a 3-vector through the sandwich product q * (0, v) * q^-1.

    Kept as an independent reference path: it never touches the matrix
    conversion, so the two can be checked against each other.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    pure = Quaternion(0.0, float(v[0]), float(v[1]), float(v[2]))
    out = quat_mul(quat_mul(q, pure), quat_inverse(q))
    return np.array([out.x, out.y, out.z])
