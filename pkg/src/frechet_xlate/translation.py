"""Deciding whether some translation of sigma brings it within delta of pi.

The plane of translations is cut by critical curves, where the combinatorial
structure of the free space can change:

* stadium boundaries: sigma edge (or sigma vertex) at distance exactly delta
  from a pi vertex (or pi edge); straight sides plus two half circles;
* corner circles: |pi_i - sigma_j - t| = delta, of which the stadium arcs are
  halves;
* overlap segments: translates of an edge through a point at distance delta
  from two vertices of the other curve.

The decision is constant on every face of their arrangement and the feasible
set is closed, so it is enough to test one translation on every vertex and
every edge of the arrangement.  Pieces are intersected pairwise (brute force)
and each piece is sampled between consecutive intersection points.

Only translations of sigma are handled.  A general transformation family
would be described by rational parametrisations of its coordinates; nothing
of that is needed (or implemented) for translations.
"""

from __future__ import annotations

import bisect
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .curves import Curve
from .freespace import alt_godau_decide
from .geometry import (
    EPS,
    GeometryError,
    Point,
    Segment,
    circle_circle_intersections,
    circle_segment_params,
    segment_intersection,
)
from .sweep import Sweeper

VE, VVE = "VE", "VVE"
STADIUM_ROW, STADIUM_COL, CORNER = "row", "col", "corner"


class Circle(NamedTuple):
    center: Point
    radius: float

    def at(self, theta: float) -> Point:
        return Point(self.center.x + self.radius * math.cos(theta), self.center.y + self.radius * math.sin(theta))


class Arc(NamedTuple):
    """Counter-clockwise arc from ``theta0`` to ``theta1`` (theta1 > theta0)."""

    circle: Circle
    theta0: float
    theta1: float


@dataclass(frozen=True)
class CriticalCurve2D:
    """One critical curve in the translation plane.

    ``side`` says which pair produced it: ``row`` (pi vertex against a
    sigma edge, or two pi vertices against a sigma edge), ``col`` (the
    mirror case) or ``corner`` (pi vertex against sigma vertex, a full
    circle).  ``payload`` holds the vertex / edge indices.
    """

    kind: str
    side: str
    payload: tuple
    segments: tuple[Segment, ...] = ()
    arcs: tuple[Arc, ...] = ()
    circles: tuple[Circle, ...] = ()


class Candidate(NamedTuple):
    t: Point
    tag: str  # arrangement-vertex | edge-sample | isolated-curve-sample | fallback-sample
    sources: tuple[int, ...]  # indices of the pieces that produced it


@dataclass
class CandidateSet:
    candidates: list[Candidate]
    n_pieces: int = 0
    n_vertices: int = 0
    n_edge_samples: int = 0
    n_isolated: int = 0

    def points(self) -> list[Point]:
        return [c.t for c in self.candidates]


def _stadium(kind_side: str, payload: tuple, a: Point, b: Point, delta: float) -> CriticalCurve2D:
    e = Point(b.x - a.x, b.y - a.y)
    length = e.norm()
    n = Point(-e.y / length * delta, e.x / length * delta)
    phi = math.atan2(n.y, n.x)
    sides = (Segment(a + n, b + n), Segment(a - n, b - n))
    arcs = (Arc(Circle(a, delta), phi, phi + math.pi), Arc(Circle(b, delta), phi - math.pi, phi))
    return CriticalCurve2D(VE, kind_side, payload, segments=sides, arcs=arcs)


def critical_curves_2d(pi: Curve, sigma: Curve, delta: float, tol: float = EPS) -> list[CriticalCurve2D]:
    """All critical curves for translating ``sigma`` against ``pi`` at ``delta``."""
    if delta <= 0:
        raise GeometryError("critical curves need delta > 0")
    curves: list[CriticalCurve2D] = []
    for i, p in enumerate(pi):
        for w in range(sigma.n - 1):
            curves.append(_stadium(STADIUM_ROW, (i, w), p - sigma[w], p - sigma[w + 1], delta))
    for j, s in enumerate(sigma):
        for i in range(pi.n - 1):
            curves.append(_stadium(STADIUM_COL, (j, i), pi[i] - s, pi[i + 1] - s, delta))
    for i, p in enumerate(pi):
        for j, s in enumerate(sigma):
            curves.append(CriticalCurve2D(VE, CORNER, (i, j), circles=(Circle(p - s, delta),)))

    def overlap(p, q):
        if p == q or math.hypot(p[0] - q[0], p[1] - q[1]) > 2.0 * delta + tol:
            return []
        return circle_circle_intersections(p, q, delta, tol)

    for i, k in itertools.combinations(range(pi.n), 2):
        pts = overlap(pi[i], pi[k])
        if pts:
            for w in range(sigma.n - 1):
                segs = tuple(Segment(a - sigma[w], a - sigma[w + 1]) for a in pts)
                curves.append(CriticalCurve2D(VVE, STADIUM_ROW, (i, k, w), segments=segs))
    for j, k in itertools.combinations(range(sigma.n), 2):
        pts = overlap(sigma[j], sigma[k])
        if pts:
            for i in range(pi.n - 1):
                segs = tuple(Segment(pi[i] - a, pi[i + 1] - a) for a in pts)
                curves.append(CriticalCurve2D(VVE, STADIUM_COL, (j, k, i), segments=segs))
    return curves


def _dedup(points: list[tuple[Point, str, tuple]], tol: float) -> list[Candidate]:
    """Drop points within ``tol`` of an earlier kept point; output in (x, y) order."""
    points = sorted(points, key=lambda p: (p[0].x, p[0].y))
    kept: list[Candidate] = []
    xs: list[float] = []
    for t, tag, src in points:
        lo = bisect.bisect_left(xs, t.x - tol)
        if any(math.hypot(kept[k].t.x - t.x, kept[k].t.y - t.y) <= tol for k in range(lo, len(kept))):
            continue
        kept.append(Candidate(t, tag, src))
        xs.append(t.x)
    return kept


def _near_disks(piece, disks, tol) -> bool:
    for c, r in disks:
        if isinstance(piece, Segment):
            ax, ay = piece.a
            dx, dy = piece.b.x - ax, piece.b.y - ay
            s = ((c[0] - ax) * dx + (c[1] - ay) * dy) / (dx * dx + dy * dy)
            s = min(1.0, max(0.0, s))
            d = math.hypot(c[0] - ax - s * dx, c[1] - ay - s * dy)
            if d > r + tol:
                return False
        else:
            d = math.hypot(piece.center.x - c[0], piece.center.y - c[1])
            if d > r + piece.radius + tol or d < piece.radius - r - tol:
                return False
    return True


def candidate_transformations(curves: Sequence[CriticalCurve2D], tol: float = EPS,
                              fallback: Sequence[float] = (0.0, 0.0),
                              clip: Sequence[tuple[Sequence[float], float]] = ()) -> CandidateSet:
    """Sample every vertex and every edge of the arrangement of ``curves``.

    Stadium arcs are replaced by their full circles, which refines the
    arrangement.  ``clip`` is a list of (centre, radius) disks: pieces that
    cannot reach all of them are skipped and candidates outside any of them
    are dropped.
    """
    segments: list[Segment] = []
    circles: dict[tuple[float, float, float], Circle] = {}
    for c in curves:
        segments.extend(c.segments)
        for circ in list(c.circles) + [a.circle for a in c.arcs]:
            circles.setdefault((circ.center.x, circ.center.y, circ.radius), circ)
    pieces: list = [s for s in segments if s.length() > 0.0] + list(circles.values())
    if clip:
        pieces = [p for p in pieces if _near_disks(p, clip, tol)]
    n_seg = sum(1 for p in pieces if isinstance(p, Segment))

    params: list[list[float]] = [[] for _ in pieces]  # along segments: u; along circles: angle
    raw: list[tuple[Point, str, tuple]] = []

    def angle(circ: Circle, pt) -> float:
        return math.atan2(pt[1] - circ.center.y, pt[0] - circ.center.x) % (2.0 * math.pi)

    for a, b in itertools.combinations(range(len(pieces)), 2):
        pa, pb = pieces[a], pieces[b]
        if a < n_seg and b < n_seg:
            for u, v in segment_intersection(pa, pb, tol):
                params[a].append(u)
                params[b].append(v)
                raw.append((pa.at(u), "arrangement-vertex", (a, b)))
        elif a < n_seg:
            for u in circle_segment_params(pb.center, pb.radius, pa, tol):
                u = min(1.0, max(0.0, u))
                pt = pa.at(u)
                params[a].append(u)
                params[b].append(angle(pb, pt))
                raw.append((pt, "arrangement-vertex", (a, b)))
        else:
            if pa.center == pb.center:
                continue
            for pt in circle_circle_intersections(pa.center, pb.center, pa.radius, tol):
                params[a].append(angle(pa, pt))
                params[b].append(angle(pb, pt))
                raw.append((pt, "arrangement-vertex", (a, b)))
    n_edge = n_iso = 0
    for k, piece in enumerate(pieces):
        if k < n_seg:
            us = sorted(set([0.0, 1.0] + params[k]))
            raw.append((piece.a, "arrangement-vertex", (k,)))
            raw.append((piece.b, "arrangement-vertex", (k,)))
            for u0, u1 in zip(us, us[1:]):
                raw.append((piece.at(0.5 * (u0 + u1)), "edge-sample", (k,)))
                n_edge += 1
        else:
            th = sorted(set(params[k]))
            if not th:
                raw.append((piece.at(0.0), "isolated-curve-sample", (k,)))
                raw.append((piece.at(math.pi), "isolated-curve-sample", (k,)))
                n_iso += 2
                continue
            for t0, t1 in zip(th, th[1:] + [th[0] + 2.0 * math.pi]):
                raw.append((piece.at(0.5 * (t0 + t1)), "edge-sample", (k,)))
                n_edge += 1
    n_vertex = sum(1 for r in raw if r[1] == "arrangement-vertex")
    if not pieces:
        raw.append((Point(float(fallback[0]), float(fallback[1])), "fallback-sample", ()))
    if clip:
        raw = [r for r in raw if all(math.hypot(r[0].x - c[0], r[0].y - c[1]) <= rad + tol for c, rad in clip)]
    return CandidateSet(_dedup(raw, tol), len(pieces), n_vertex, n_edge, n_iso)


def _congruent(pi: Curve, sigma: Curve, tol: float) -> Optional[Point]:
    t = pi[0] - sigma[0]
    if pi.n != sigma.n:
        return None
    for p, s in zip(pi, sigma):
        if math.hypot(s.x + t.x - p.x, s.y + t.y - p.y) > tol:
            return None
    return t


@dataclass
class DecideStats:
    candidates: int = 0
    evaluated: int = 0
    counts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    backend_updates: int = 0
    backend_queries: int = 0


def decide_translation_2d(pi: Curve, sigma: Curve, delta: float, mode: str = "oracle", backend: str = "baseline",
                          tol: float = EPS, stats: Optional[DecideStats] = None) -> tuple[bool, Optional[Point]]:
    """Is there t with d_F(pi, sigma + t) <= delta?  Returns (decision, witness).

    ``mode="oracle"`` runs the reachability decision from scratch at every
    candidate; ``mode="events"`` tours the candidates in (x, y) order along
    straight legs, carrying the placeholder grid with event updates and
    querying the backend at each candidate.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if mode not in ("oracle", "events"):
        raise ValueError(f"unknown mode {mode!r}")
    stats = stats if stats is not None else DecideStats()
    t0 = pi[0] - sigma[0]
    if delta == 0:
        t = _congruent(pi, sigma, tol)
        if t is None and alt_godau_decide(pi, sigma, 0.0, tol, t0):
            t = t0
        stats.candidates = stats.evaluated = 1
        return (t is not None, t)

    clock = time.perf_counter()
    curves = critical_curves_2d(pi, sigma, delta, tol)
    t_end = pi[-1] - sigma[-1]
    # a feasible translation keeps both pairs of endpoints within delta
    clip = [(t0, delta), (t_end, delta)]
    cands = candidate_transformations(curves, tol, fallback=t0, clip=clip)
    stats.counts = critical_counts(curves, cands)
    stats.candidates = len(cands.candidates)
    stats.timings["arrangement"] = time.perf_counter() - clock
    clock = time.perf_counter()
    points = cands.points()
    found: Optional[Point] = None
    if mode == "oracle":
        for t in points:
            stats.evaluated += 1
            if alt_godau_decide(pi, sigma, delta, tol, t):
                found = t
                break
    elif points:
        sw = Sweeper(pi, sigma, delta, points[0], backend, tol)
        stats.evaluated = 1
        if sw.query():
            found = points[0]
        else:
            for t in points[1:]:
                stats.evaluated += 1
                if sw.leg(t):
                    found = t
                    break
        stats.backend_updates = sw.backend.updates
        stats.backend_queries = sw.backend.queries
    stats.timings["evaluate"] = time.perf_counter() - clock
    return (found is not None, found)


def critical_counts(curves: Sequence[CriticalCurve2D], cands: Optional[CandidateSet] = None) -> dict[str, int]:
    out = {
        "ve_curves": sum(1 for c in curves if c.kind == VE and c.side != CORNER),
        "corner_circles": sum(1 for c in curves if c.side == CORNER),
        "vve_curves": sum(1 for c in curves if c.kind == VVE),
    }
    if cands is not None:
        out.update(pieces=cands.n_pieces, arrangement_vertices=cands.n_vertices,
                   edge_samples=cands.n_edge_samples, isolated_samples=cands.n_isolated,
                   candidates=len(cands.candidates))
    return out


def verify_critical_counts(pi: Curve, sigma: Curve, delta: float, tol: float = EPS) -> dict[str, int]:
    """Curve and candidate counts for the unclipped arrangement."""
    curves = critical_curves_2d(pi, sigma, delta, tol)
    return critical_counts(curves, candidate_transformations(curves, tol, fallback=pi[0] - sigma[0]))
