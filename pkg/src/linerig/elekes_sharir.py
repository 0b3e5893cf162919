"""Transform between ordered planar point pairs and non-horizontal lines in 3-space.

The pair (a, b) maps to the locus of plane rotations sending a to b: with
u = (a + b)/2 and v = rot90ccw(b - a)/2, that locus is the line
t -> (u + t v, t), i.e. the chart point (u_x, u_y, v_x, v_y). The height t of a
point on the line is cot(theta/2) of the rotation it represents. The key
algebraic identity (exact in exact arithmetic) is

    g(to_line(a, b), to_line(c, d)) = (|b - d|^2 - |a - c|^2) / 4,

so equal-distance constraints on point pairs correspond to line incidences.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import CongruenceError, DomainError
from .lines3d import Line, LineConfig, Plane, Point3

Scalar = Union[int, float, Fraction]
Point2 = tuple[Scalar, Scalar]


class PointPair(NamedTuple):
    a: Point2
    b: Point2


def to_line(a: Sequence[Scalar], b: Sequence[Scalar]) -> Line:
    """Line of all rotations mapping a to b (a vertical line when a == b)."""
    ax, ay = a
    bx, by = b
    half = Fraction(1, 2) if isinstance(ax + ay + bx + by, (int, Fraction)) else 0.5
    return Line((ax + bx) * half, (ay + by) * half, (ay - by) * half, (bx - ax) * half)


def from_line(line: Line) -> PointPair:
    """Exact inverse of to_line."""
    a = (line.a - line.d, line.b + line.c)
    b = (line.a + line.d, line.b - line.c)
    return PointPair(a, b)


@dataclass(frozen=True)
class Rotation:
    """Plane rotation stored as center plus t = cot(theta/2)."""

    center: Point2
    t: Scalar

    @property
    def theta(self) -> float:
        # 2*atan2(1, t) sweeps (0, 2*pi) as t runs from +inf to -inf
        return 2.0 * math.atan2(1.0, float(self.t))

    def cos_sin(self) -> tuple[Scalar, Scalar]:
        t = self.t
        denom = t * t + 1
        return (t * t - 1) / denom, 2 * t / denom

    def apply(self, points: Sequence[Sequence[Scalar]]) -> list[Point2]:
        co, si = self.cos_sin()
        cx, cy = self.center
        out = []
        for p in points:
            dx, dy = p[0] - cx, p[1] - cy
            out.append((cx + co * dx - si * dy, cy + si * dx + co * dy))
        return out


def rotation_at(point: Point3) -> Rotation:
    """The rotation represented by a point of the transform's 3-space."""
    x, y, z = point
    return Rotation(center=(x, y), t=z)


@dataclass(frozen=True)
class PlanarMotion:
    """Rigid motion p -> M p + t with M orthogonal; orientation is sign(det M)."""

    matrix: tuple[tuple[float, float], tuple[float, float]]
    translation: tuple[float, float]

    @property
    def orientation(self) -> int:
        (m00, m01), (m10, m11) = self.matrix
        return 1 if m00 * m11 - m01 * m10 > 0 else -1

    def apply(self, points: Sequence[Sequence[Scalar]]) -> list[Point2]:
        (m00, m01), (m10, m11) = self.matrix
        tx, ty = self.translation
        return [(m00 * p[0] + m01 * p[1] + tx, m10 * p[0] + m11 * p[1] + ty) for p in points]


def reflection_at(plane: Plane) -> PlanarMotion:
    """The orientation-reversing motion carried by a common non-vertical plane.

    If every line to_line(a_i, b_i) lies in z = lam*x + mu*y + nu, then with
    w = (lam, mu), e1 = w/|w|, e2 = rot90ccw(e1), the glide reflection

        p -> p - 2*(p.e1 + nu/|w|) e1 - (2/|w|) e2

    maps each a_i to b_i.
    """
    lam, mu, nu = plane.lam, plane.mu, plane.nu
    norm = math.hypot(lam, mu)
    if norm == 0.0:
        raise DomainError("a horizontal plane carries no planar motion")
    e1 = (lam / norm, mu / norm)
    e2 = (-e1[1], e1[0])
    m = ((1.0 - 2.0 * e1[0] * e1[0], -2.0 * e1[0] * e1[1]),
         (-2.0 * e1[0] * e1[1], 1.0 - 2.0 * e1[1] * e1[1]))
    shift = (-2.0 * (nu / norm) * e1[0] - (2.0 / norm) * e2[0],
             -2.0 * (nu / norm) * e1[1] - (2.0 / norm) * e2[1])
    return PlanarMotion(m, shift)


def phi(p: Sequence[Sequence[Scalar]], p_prime: Sequence[Sequence[Scalar]]) -> LineConfig:
    """Componentwise transform of a pair of embeddings into a line configuration."""
    if len(p) != len(p_prime):
        raise DomainError(f"embedding sizes differ: {len(p)} vs {len(p_prime)}")
    if len(p) == 0:
        raise DomainError("empty embeddings")
    return LineConfig(tuple(to_line(a, b) for a, b in zip(p, p_prime)))


def recover_motion(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]],
                   orientation: int = 1, tol: float = 1e-8) -> PlanarMotion:
    """Least-squares rigid motion of the requested orientation taking A to B.

    Inputs must be congruent within tolerance; a violating pair of indices is
    reported otherwise. Orientation-constrained orthogonal fit on centered
    coordinates, translations included (a pure translation yields the identity
    matrix part).
    """
    if orientation not in (1, -1):
        raise DomainError("orientation must be +1 or -1")
    pa = np.asarray(A, dtype=float)
    pb = np.asarray(B, dtype=float)
    if pa.shape != pb.shape or pa.ndim != 2 or pa.shape[1] != 2:
        raise DomainError("point lists must be equal-length sequences of planar points")
    if pa.shape[0] < 2:
        raise DomainError("need at least 2 points")
    scale = 1.0 + max(np.max(np.abs(pa)), np.max(np.abs(pb)))
    for i in range(pa.shape[0]):
        for j in range(i + 1, pa.shape[0]):
            da = np.linalg.norm(pa[i] - pa[j])
            db = np.linalg.norm(pb[i] - pb[j])
            if abs(da - db) > tol * scale:
                raise CongruenceError(
                    f"points {i} and {j} have distances {da:.6g} vs {db:.6g}", (i, j))
    ca = pa.mean(axis=0)
    cb = pb.mean(axis=0)
    H = (pb - cb).T @ (pa - ca)
    U, _, Vt = np.linalg.svd(H)
    sign = orientation * round(float(np.linalg.det(U @ Vt)))
    M = U @ np.diag([1.0, float(sign)]) @ Vt
    t = cb - M @ ca
    return PlanarMotion(((M[0, 0], M[0, 1]), (M[1, 0], M[1, 1])), (float(t[0]), float(t[1])))


# ---------------------------------------------------------------------------
# file formats


def parse_embedding(text: str) -> list[Point2]:
    data = json.loads(text)
    pts = data["points"]
    if not isinstance(pts, list) or any(len(p) != 2 for p in pts):
        raise DomainError("embedding JSON must hold planar points under 'points'")
    return [(float(x), float(y)) for x, y in pts]


def serialize_embedding(points: Sequence[Sequence[Scalar]]) -> str:
    return json.dumps({"points": [[float(p[0]), float(p[1])] for p in points]},
                      separators=(",", ":"))


def parse_pair_file(text: str) -> tuple[list[Point2], list[Point2]]:
    data = json.loads(text)
    try:
        p = [(float(x), float(y)) for x, y in data["p"]]
        pp = [(float(x), float(y)) for x, y in data["p_prime"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"pair file must hold 'p' and 'p_prime' point lists: {exc}") from exc
    return p, pp


def serialize_pair_file(p: Sequence[Sequence[Scalar]], p_prime: Sequence[Sequence[Scalar]]) -> str:
    return json.dumps({
        "p": [[float(q[0]), float(q[1])] for q in p],
        "p_prime": [[float(q[0]), float(q[1])] for q in p_prime],
    }, separators=(",", ":"))
