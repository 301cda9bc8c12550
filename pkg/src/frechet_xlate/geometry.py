"""Planar geometry primitives shared by the free-space and event machinery.

Everything here is plain double precision.  A single absolute tolerance
(``EPS``, overridable through the ``FRECHET_EPS`` environment variable) is
used for root coincidence and for closed-disk membership tests.
"""

from __future__ import annotations

import math
import os
from typing import NamedTuple, Optional


class GeometryError(ValueError):
    """Raised for degenerate input that has no meaningful geometric answer."""


def _read_eps() -> float:
    raw = os.environ.get("FRECHET_EPS")
    if raw is None:
        return 1e-9
    value = float(raw)
    if not (0.0 <= value < 1e-3):
        raise ValueError(f"FRECHET_EPS must lie in [0, 1e-3), got {raw!r}")
    return value


EPS = _read_eps()

# disc tolerance floor, in units of the coefficient magnitudes
_DISC_NOISE = 16 * 2.220446049250313e-16


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other) -> "Point":  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other) -> "Point":
        return Point(self.x - other[0], self.y - other[1])

    def __mul__(self, k: float) -> "Point":  # type: ignore[override]
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__  # type: ignore[assignment]

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


class Segment(NamedTuple):
    a: Point
    b: Point

    def at(self, s: float) -> Point:
        return Point(self.a.x + s * (self.b.x - self.a.x), self.a.y + s * (self.b.y - self.a.y))

    @property
    def vector(self) -> Point:
        return Point(self.b.x - self.a.x, self.b.y - self.a.y)

    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)


class Root(NamedTuple):
    value: float
    mult: int


def point(x: float, y: float) -> Point:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite coordinate ({x}, {y})")
    return Point(float(x), float(y))


def direction(dx: float, dy: float) -> Point:
    """Unit vector along (dx, dy)."""
    length = math.hypot(dx, dy)
    if length == 0.0 or not math.isfinite(length):
        raise GeometryError("direction vector must be finite and non-zero")
    return Point(dx / length, dy / length)


def within(dist: float, radius: float, tol: float = EPS) -> bool:
    """Closed-disk membership with absolute slack ``tol``."""
    return dist <= radius + tol


def solve_quadratic(a: float, b: float, c: float, tol: float = EPS) -> list[Root]:
    """Real roots of a*x^2 + b*x + c, ascending.

    Roots closer than ``tol`` (or a discriminant that is negative only by
    rounding noise) collapse into one root of multiplicity 2.  The larger
    magnitude root is formed without cancellation and the other one from
    Vieta's product.
    """
    if a == 0.0 and b == 0.0 and c == 0.0:
        raise GeometryError("all quadratic coefficients are zero")
    if a == 0.0:
        if b == 0.0:
            return []
        return [Root(-c / b, 1)]
    disc = b * b - 4.0 * a * c
    noise = max((tol * a) ** 2, _DISC_NOISE * (b * b + abs(4.0 * a * c)))
    if disc < -noise:
        return []
    if disc <= noise:
        return [Root(-b / (2.0 * a), 2)]
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    r1 = q / a
    r2 = c / q if q != 0.0 else -r1
    lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
    return [Root(lo, 1), Root(hi, 1)]


def point_segment_distance(p, seg: Segment) -> tuple[float, float]:
    """Distance from ``p`` to ``seg`` and the (clamped) foot parameter."""
    ax, ay = seg.a
    dx, dy = seg.b[0] - ax, seg.b[1] - ay
    den = dx * dx + dy * dy
    if den == 0.0:
        raise GeometryError("zero-length segment")
    s = ((p[0] - ax) * dx + (p[1] - ay) * dy) / den
    s = min(1.0, max(0.0, s))
    return math.hypot(p[0] - ax - s * dx, p[1] - ay - s * dy), s


def free_interval(center, radius: float, seg: Segment, tol: float = EPS) -> Optional[tuple[float, float]]:
    """Parameters s in [0, 1] with |seg(s) - center| <= radius.

    The answer is one closed interval or ``None``.  The endpoint disks are
    authoritative for s = 0 and s = 1: an end within ``radius + tol`` is
    always included and the interval snaps exactly onto it, so interval
    endpoints that coincide with a segment end are returned as 0.0 / 1.0.
    """
    if radius < 0:
        raise GeometryError("negative radius")
    ax, ay = seg.a
    dx, dy = seg.b[0] - ax, seg.b[1] - ay
    fx, fy = ax - center[0], ay - center[1]
    A = dx * dx + dy * dy
    if A == 0.0:
        raise GeometryError("zero-length segment")
    B = 2.0 * (fx * dx + fy * dy)
    C = fx * fx + fy * fy - radius * radius
    a_in = within(math.hypot(fx, fy), radius, tol)
    b_in = within(math.hypot(seg.b[0] - center[0], seg.b[1] - center[1]), radius, tol)
    if a_in and b_in:
        return (0.0, 1.0)
    roots = solve_quadratic(A, B, C, tol)
    if not roots:
        if a_in:
            return (0.0, 0.0)
        if b_in:
            return (1.0, 1.0)
        return None
    lo, hi = roots[0].value, roots[-1].value
    if a_in:
        return (0.0, min(1.0, max(hi, 0.0)))
    if b_in:
        return (max(0.0, min(lo, 1.0)), 1.0)
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    if lo > hi:
        return None
    return (lo, hi)


def circle_circle_intersections(c1, c2, radius: float, tol: float = EPS) -> list[Point]:
    """Common points of two circles of equal ``radius``.

    Tangent circles (centre distance within ``tol`` of 2*radius) give one
    point.  Coincident centres are rejected.
    """
    if radius <= 0:
        raise GeometryError("radius must be positive")
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    if d == 0.0:
        raise GeometryError("coincident circle centres")
    half = d / 2.0
    mx, my = c1[0] + dx / 2.0, c1[1] + dy / 2.0
    if half > radius + tol:
        return []
    h2 = radius * radius - half * half
    if h2 <= 0.0 or math.sqrt(max(h2, 0.0)) <= tol:
        return [Point(mx, my)]
    h = math.sqrt(h2)
    ux, uy = -dy / d, dx / d
    return [Point(mx + h * ux, my + h * uy), Point(mx - h * ux, my - h * uy)]


def circle_segment_params(center, radius: float, seg: Segment, tol: float = EPS) -> list[float]:
    """Parameters s in [0, 1] where ``seg`` crosses the circle boundary."""
    ax, ay = seg.a
    dx, dy = seg.b[0] - ax, seg.b[1] - ay
    fx, fy = ax - center[0], ay - center[1]
    A = dx * dx + dy * dy
    roots = solve_quadratic(A, 2.0 * (fx * dx + fy * dy), fx * fx + fy * fy - radius * radius, tol)
    return [r.value for r in roots if -tol <= r.value <= 1.0 + tol]


def segment_intersection(s1: Segment, s2: Segment, tol: float = EPS) -> list[tuple[float, float]]:
    """Parameter pairs (u, v) with s1(u) == s2(v).

    Proper crossings give one pair.  Collinear overlaps give the two ends of
    the shared piece.
    """
    ax, ay = s1.a
    rx, ry = s1.b[0] - ax, s1.b[1] - ay
    bx, by = s2.a
    sx, sy = s2.b[0] - bx, s2.b[1] - by
    den = rx * sy - ry * sx
    qx, qy = bx - ax, by - ay
    scale = math.hypot(rx, ry) * math.hypot(sx, sy)
    if abs(den) > 1e-12 * scale:
        u = (qx * sy - qy * sx) / den
        v = (qx * ry - qy * rx) / den
        lu, lv = tol / math.hypot(rx, ry), tol / math.hypot(sx, sy)
        if -lu <= u <= 1 + lu and -lv <= v <= 1 + lv:
            return [(min(1.0, max(0.0, u)), min(1.0, max(0.0, v)))]
        return []
    # parallel: only collinear overlap matters
    if abs(qx * ry - qy * rx) > tol * math.hypot(rx, ry):
        return []
    rr = rx * rx + ry * ry
    t0 = (qx * rx + qy * ry) / rr
    t1 = t0 + (sx * rx + sy * ry) / rr
    lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
    if lo > hi + tol / math.sqrt(rr):
        return []
    out = []
    for u in sorted({lo, hi}):
        p = s1.at(u)
        ss = sx * sx + sy * sy
        v = ((p.x - bx) * sx + (p.y - by) * sy) / ss
        out.append((u, min(1.0, max(0.0, v))))
    return out
