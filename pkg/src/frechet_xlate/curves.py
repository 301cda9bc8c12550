"""Polygonal curves: data model, text format, translation, random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .geometry import GeometryError, Point, Segment, point


class CurveParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Curve:
    """Ordered vertices of a planar polyline; no two consecutive equal."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise GeometryError("a curve needs at least two vertices")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise GeometryError("consecutive duplicate vertices")

    @classmethod
    def from_points(cls, pts: Iterable[Sequence[float]]) -> "Curve":
        return cls(tuple(point(p[0], p[1]) for p in pts))

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Point:
        return self.vertices[i]

    def __iter__(self):
        return iter(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> Segment:
        return Segment(self.vertices[i], self.vertices[i + 1])

    def edges(self) -> list[Segment]:
        return [self.edge(i) for i in range(self.n - 1)]

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def translate(c: Curve, t: Sequence[float]) -> Curve:
    tx, ty = float(t[0]), float(t[1])
    return Curve(tuple(Point(p.x + tx, p.y + ty) for p in c.vertices))


def parse_curve(text: Union[str, bytes]) -> tuple[Curve, int]:
    """Parse the curve text format.

    Returns the curve and the number of consecutive duplicate vertices that
    were collapsed while normalising.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        rows.append((lineno, s))
    if not rows:
        raise CurveParseError("empty input")
    header_line, header = rows[0]
    try:
        n = int(header)
    except ValueError:
        raise CurveParseError(f"expected vertex count, got {header!r}", header_line) from None
    body = rows[1:]
    if len(body) != n:
        last = body[-1][0] if body else header_line
        raise CurveParseError(f"header announces {n} vertices, found {len(body)}", last)
    pts: list[Point] = []
    collapsed = 0
    for lineno, s in body:
        parts = s.split()
        if len(parts) != 2:
            raise CurveParseError(f"expected 'x y', got {s!r}", lineno)
        try:
            p = point(float(parts[0]), float(parts[1]))
        except (ValueError, GeometryError):
            raise CurveParseError(f"bad coordinates {s!r}", lineno) from None
        if pts and pts[-1] == p:
            collapsed += 1
            continue
        pts.append(p)
    if len(pts) < 2:
        raise CurveParseError("n < 2 after normalization", body[-1][0] if body else header_line)
    return Curve(tuple(pts)), collapsed


def serialize_curve(c: Curve) -> str:
    lines = [str(c.n)]
    lines += [f"{p.x:.17g} {p.y:.17g}" for p in c.vertices]
    return "\n".join(lines) + "\n"


def load_curve(path) -> Curve:
    with open(path, "rb") as fh:
        return parse_curve(fh.read())[0]


def random_curve(seed: int, n: int, bbox: tuple[float, float, float, float] = (0.0, 0.0, 1.0, 1.0)) -> Curve:
    """n vertices i.i.d. uniform in ``bbox`` = (xmin, ymin, xmax, ymax)."""
    if n < 2:
        raise GeometryError("n must be at least 2")
    rng = random.Random(seed)
    x0, y0, x1, y1 = bbox
    pts: list[Point] = []
    while len(pts) < n:
        p = Point(rng.uniform(x0, x1), rng.uniform(y0, y1))
        if pts and pts[-1] == p:
            continue
        pts.append(p)
    return Curve(tuple(pts))
