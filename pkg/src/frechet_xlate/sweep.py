"""Event-driven sweep of sigma along a straight translation path.

sigma is translated by ``origin + lam * v`` for ``lam`` in a closed range.
The combinatorial structure of the free space only changes at the roots of
three families of equations, each solved in closed form:

* corner: a vertex of one curve is at distance delta from a vertex of the
  other (a corner of the diagram enters or leaves the free space);
* tangency: a vertex is at distance delta from the interior of an opposing
  edge (two critical points appear or disappear together);
* vve: the moving edge passes through a point at distance delta from two
  vertices of the other curve (two grid lines overlap and swap order).

Roots closer than ``tol`` are merged into one tick.  Each tick is handled in
two phases: the touched strips are re-evaluated exactly at the tick (the
decision *at* the tick, closed free space) and then at the middle of the
following gap (the decision on the open gap).  Re-evaluating whole strips
keeps every strip's boundaries at one common translation, so line order and
membership inside a strip are always those of a real configuration.
"""

from __future__ import annotations

import bisect
import itertools
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, NamedTuple, Optional, Sequence

from .curves import Curve
from .freespace import FreeSpaceSkeleton, alt_godau_decide, build_skeleton
from .fsg import CRITICAL, GridLine, build_fsg
from .geometry import EPS, GeometryError, Point, Segment, circle_circle_intersections, direction, solve_quadratic
from .grid import (
    PlaceholderGrid,
    WeightChange,
    apply_boundary_vertex_op,
    apply_col_delete,
    apply_col_insert,
    apply_corner_op,
    apply_row_delete,
    apply_row_insert,
    audit_grid,
    build_grid,
)
from .reach import ReachabilityBackend, make_backend


class EventKind(str, Enum):
    ENTERING = "Entering"
    LEAVING = "Leaving"
    APPEARING = "Appearing"
    DISAPPEARING = "Disappearing"
    OVERLAPPING = "Overlapping"
    SEPARATING = "Separating"


KIND_RANK = {k: r for r, k in enumerate(EventKind)}

CORNER, TANGENCY, VVE = "corner", "tangency", "vve"
ROW, COL = "row", "col"


class Event(NamedTuple):
    """One root of one event equation.

    ``payload`` by family and side:

    * corner: (i, j) for pi_i against sigma_j; side is ROW by convention;
    * tangency ROW: (i, w), vertex pi_i against sigma edge w;
      tangency COL: (j, i), vertex sigma_j against pi edge i;
    * vve ROW: (i, k, w), vertices pi_i, pi_k against sigma edge w;
      vve COL: (j, k, i), vertices sigma_j, sigma_k against pi edge i.
    """

    lam: float
    kind: EventKind
    family: str
    side: str
    payload: tuple

    def order_key(self):
        return (KIND_RANK[self.kind], self.family, self.side, self.payload)

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "kind": self.kind.value, "family": self.family, "side": self.side,
                "payload": list(self.payload)}


class Tick(NamedTuple):
    lam: float
    events: list[Event]


@dataclass
class SweepPlan:
    direction: Point
    lo: float
    hi: float
    origin: Point
    delta: float
    tol: float
    events: list[Event]

    def ticks(self) -> list[Tick]:
        out: list[Tick] = []
        for e in self.events:
            if out and e.lam - out[-1].events[-1].lam <= self.tol:
                out[-1].events.append(e)
            else:
                out.append(Tick(e.lam, [e]))
        return out

    def counts(self) -> dict[str, int]:
        ve = sum(1 for e in self.events if e.family != VVE)
        return {"m": len(self.events), "m_ve": ve, "m_vve": len(self.events) - ve}


# Event equations ------------------------------------------------------------


def _clip(lam: float, lam_range: Sequence[float], tol: float) -> Optional[float]:
    lo, hi = lam_range
    if lam < lo - tol or lam > hi + tol:
        return None
    if lam - lo <= tol:
        return float(lo)
    if hi - lam <= tol:
        return float(hi)
    return lam


def _corner_roots(pi_i, sigma_j, v, delta, tol):
    d = Point(pi_i[0] - sigma_j[0], pi_i[1] - sigma_j[1])
    vv = v[0] * v[0] + v[1] * v[1]
    return d, vv, solve_quadratic(vv, -2.0 * d.dot(v), d.dot(d) - delta * delta, tol)


def ve_corner_lambdas(pi_i, sigma_j, v, delta: float, lam_range: Sequence[float], tol: float = EPS) -> list[float]:
    """lam with |pi_i - (sigma_j + lam * v)| = delta, inside ``lam_range``."""
    if delta < 0:
        raise GeometryError("delta must be non-negative")
    _, _, roots = _corner_roots(pi_i, sigma_j, v, delta, tol)
    out = [_clip(r.value, lam_range, tol) for r in roots]
    return [x for x in out if x is not None]


def _tangency_roots(p, edge: Segment, v, delta, tol):
    e = edge.vector
    length = e.norm()
    n = Point(-e.y / length, e.x / length)
    nv = n.dot(v)
    if delta <= 0 or abs(nv) <= 1e-15:
        return []
    d = Point(p[0] - edge.a.x, p[1] - edge.a.y)
    nd = n.dot(d)
    out = []
    for h in (delta, -delta):
        lam = (nd - h) / nv
        foot = e.dot(Point(d.x - lam * v[0], d.y - lam * v[1])) / (length * length)
        out.append((lam, foot, h, nv))
    return out


def ve_tangency_lambdas(p, edge: Segment, v, delta: float, lam_range: Sequence[float],
                        tol: float = EPS) -> list[tuple[float, float]]:
    """(lam, foot) where ``edge + lam * v`` touches the delta-circle around ``p``
    with the foot strictly inside the edge.  Endpoint touches are corner events.
    """
    out = []
    for lam, foot, _, _ in _tangency_roots(p, edge, v, delta, tol):
        lam_c = _clip(lam, lam_range, tol)
        if lam_c is not None and tol < foot < 1.0 - tol:
            out.append((lam_c, foot))
    return sorted(out)


def _vve_roots(p, q, edge: Segment, v, delta, tol):
    if delta <= 0:
        return []
    if p[0] == q[0] and p[1] == q[1]:
        raise GeometryError("coincident vertices have no overlap events")
    e = edge.vector
    det = e.cross(v)
    if abs(det) <= 1e-12 * e.norm() * math.hypot(v[0], v[1]):
        return []
    out = []
    for a in circle_circle_intersections(p, q, delta, tol):
        r = Point(a.x - edge.a.x, a.y - edge.a.y)
        s = r.cross(v) / det
        lam = e.cross(r) / det
        if -tol <= s <= 1.0 + tol:
            out.append((lam, s))
    return out


def vve_lambdas(p, q, edge: Segment, v, delta: float, lam_range: Sequence[float], tol: float = EPS) -> list[float]:
    """lam where ``edge + lam * v`` passes through a point at distance delta from both ``p`` and ``q``."""
    out = []
    for lam, _ in _vve_roots(p, q, edge, v, delta, tol):
        lam_c = _clip(lam, lam_range, tol)
        if lam_c is not None:
            out.append(lam_c)
    return sorted(out)


def enumerate_sweep_events(pi: Curve, sigma: Curve, v, lam_range: Sequence[float], delta: float,
                           tol: float = EPS, origin: Sequence[float] = (0.0, 0.0)) -> SweepPlan:
    """All events of the sweep ``sigma + origin + lam * v`` over ``lam_range``, sorted."""
    lo, hi = float(lam_range[0]), float(lam_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValueError(f"invalid sweep range [{lo}, {hi}]")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    v = direction(v[0], v[1])
    mv = Point(-v.x, -v.y)
    o = Point(float(origin[0]), float(origin[1]))
    sig = [Point(s.x + o.x, s.y + o.y) for s in sigma]
    rng = (lo, hi)
    events: list[Event] = []

    for i, p in enumerate(pi):
        for j, s in enumerate(sig):
            d, vv, roots = _corner_roots(p, s, v, delta, tol)
            for r in roots:
                lam = _clip(r.value, rng, tol)
                if lam is None:
                    continue
                slope = 2.0 * r.value * vv - 2.0 * d.dot(v)
                kind = EventKind.ENTERING if r.mult == 2 or slope < 0 else EventKind.LEAVING
                events.append(Event(lam, kind, CORNER, ROW, (i, j)))

    def tangencies(point, edge, vel, side, payload):
        for lam, foot, h, nv in _tangency_roots(point, edge, vel, delta, tol):
            lam_c = _clip(lam, rng, tol)
            if lam_c is None or not (tol < foot < 1.0 - tol):
                continue
            shrinking = math.copysign(1.0, h) * -nv < 0
            kind = EventKind.APPEARING if shrinking else EventKind.DISAPPEARING
            events.append(Event(lam_c, kind, TANGENCY, side, payload))

    for i, p in enumerate(pi):
        for w in range(len(sig) - 1):
            tangencies(p, Segment(sig[w], sig[w + 1]), v, ROW, (i, w))
    for j, s in enumerate(sig):
        for i in range(pi.n - 1):
            tangencies(s, pi.edge(i), mv, COL, (j, i))

    def overlaps(p, q, edge, vel, side, payload):
        if p == q or math.hypot(p[0] - q[0], p[1] - q[1]) > 2.0 * delta + tol:
            return
        for lam, _ in _vve_roots(p, q, edge, vel, delta, tol):
            lam_c = _clip(lam, rng, tol)
            if lam_c is not None:
                events.append(Event(lam_c, EventKind.OVERLAPPING, VVE, side, payload))

    if delta > 0:
        for i, k in itertools.combinations(range(pi.n), 2):
            for w in range(len(sig) - 1):
                overlaps(pi[i], pi[k], Segment(sig[w], sig[w + 1]), v, ROW, (i, k, w))
        for j, k in itertools.combinations(range(len(sig)), 2):
            for i in range(pi.n - 1):
                overlaps(sig[j], sig[k], pi.edge(i), mv, COL, (j, k, i))

    events.sort(key=lambda e: (e.lam, e.order_key()))
    # merge near-coincident roots into ticks, then re-sort each tick deterministically
    plan = SweepPlan(v, lo, hi, o, float(delta), tol, [])
    merged: list[Event] = []
    for t in SweepPlan(v, lo, hi, o, float(delta), tol, events).ticks():
        merged.extend(sorted(t.events, key=Event.order_key))
    plan.events = merged
    return plan


def default_range(pi: Curve, sigma: Curve, v, delta: float, origin: Sequence[float] = (0.0, 0.0)) -> tuple[float, float]:
    """Symmetric range outside which sigma cannot be within delta of pi."""
    def diam(c: Curve):
        x0, y0, x1, y1 = c.bbox()
        return math.hypot(x1 - x0, y1 - y0), ((x0 + x1) / 2.0, (y0 + y1) / 2.0)

    dp, cp = diam(pi)
    ds, cs = diam(sigma)
    centre = math.hypot(cp[0] - cs[0] - origin[0], cp[1] - cs[1] - origin[1])
    r = (dp + ds + centre + delta) / math.hypot(v[0], v[1])
    return (-r, r)


# Applying events ------------------------------------------------------------


def touched_sets(e: Event, n_pi: int, n_sigma: int) -> tuple[set[int], set[int], set[tuple[int, int]]]:
    """Row strips, column strips and corners whose state ``e`` can change."""
    rows: set[int] = set()
    cols: set[int] = set()
    corners: set[tuple[int, int]] = set()
    if e.family == CORNER:
        i, j = e.payload
        corners.add((i, j))
        rows.update(w for w in (j - 1, j) if 0 <= w < n_sigma - 1)
        cols.update(c for c in (i - 1, i) if 0 <= c < n_pi - 1)
    elif e.side == ROW:
        rows.add(e.payload[-1])
    else:
        cols.add(e.payload[-1])
    return rows, cols, corners


def _sync_strip(g: PlaceholderGrid, sk: FreeSpaceSkeleton, strip: int, is_row: bool, seq) -> list[WeightChange]:
    """Bring one strip's grid lines and boundary weights in line with the skeleton."""
    if is_row:
        lines = g.row_lines[strip]
        crit = sk.row_critical(strip)
        delete, insert = apply_row_delete, apply_row_insert
    else:
        lines = g.col_lines[strip]
        crit = sk.col_critical(strip)
        delete, insert = apply_col_delete, apply_col_insert
    target = {(cp.owner, cp.end): cp.pos for cp in crit}
    out: list[WeightChange] = []
    for idx in range(len(lines) - 1, -1, -1):
        if lines[idx].key not in target:
            out += delete(g, strip, idx)
    for idx, ln in enumerate(lines):
        lines[idx] = ln._replace(pos=target[ln.key])
    lines.sort(key=GridLine.sort_key)
    present = {ln.key for ln in lines}
    for key in sorted((k for k in target if k not in present), key=lambda k: (target[k], k)):
        ln = GridLine(CRITICAL, key[0], strip, key[1], target[key], next(seq))
        idx = bisect.bisect_right([x.sort_key() for x in lines], ln.sort_key())
        out += insert(g, strip, ln, idx)
    out += _repair_strip(g, sk, strip, is_row)
    return out


def _repair_strip(g: PlaceholderGrid, sk: FreeSpaceSkeleton, strip: int, is_row: bool) -> list[WeightChange]:
    out: list[WeightChange] = []
    if is_row:
        lines = g.row_lines[strip]
        for i in range(g.n_pi):
            c = g.col_of_vertex(i)
            top = int(sk.corners[i][strip + 1])
            for r in range(g.row_capacity):
                if r < len(lines):
                    ln = lines[r]
                    want = 1 if ln.owner == i else int(sk.vertical_member(i, strip, ln.pos))
                else:
                    want = top
                row = g.row_slot(strip, r)
                if g.weights[c, row] != want:
                    out += apply_boundary_vertex_op(g, c, row, want)
    else:
        lines = g.col_lines[strip]
        for j in range(g.n_sigma):
            row = g.row_of_vertex(j)
            right = int(sk.corners[strip + 1][j])
            for r in range(g.col_capacity):
                if r < len(lines):
                    ln = lines[r]
                    want = 1 if ln.owner == j else int(sk.horizontal_member(j, strip, ln.pos))
                else:
                    want = right
                c = g.col_slot(strip, r)
                if g.weights[c, row] != want:
                    out += apply_boundary_vertex_op(g, c, row, want)
    return out


def resync(g: PlaceholderGrid, sk: FreeSpaceSkeleton, t: Sequence[float], rows: Iterable[int], cols: Iterable[int],
           corners: Iterable[tuple[int, int]], seq) -> list[WeightChange]:
    """Re-evaluate the given corners and whole strips at translation ``t`` and
    emit the grid operations that carry the lattice along."""
    rows, cols = sorted(rows), sorted(cols)
    out: list[WeightChange] = []
    for i, j in sorted(corners):
        sk.corners[i][j] = sk.eval_corner(i, j, t)
        out += apply_corner_op(g, i, j, int(sk.corners[i][j]))
    for w in rows:
        for i in range(sk.n_pi):
            sk.vert[i][w] = sk.eval_vertical(i, w, t)
    for c in cols:
        for j in range(sk.n_sigma):
            sk.horz[j][c] = sk.eval_horizontal(j, c, t)
    for w in rows:
        out += _sync_strip(g, sk, w, True, seq)
    for c in cols:
        out += _sync_strip(g, sk, c, False, seq)
    return out


def _seq_after(g: PlaceholderGrid):
    top = max((ln.seq for strip in g.row_lines + g.col_lines for ln in strip), default=-1)
    return itertools.count(top + 1)


def apply_event(g: PlaceholderGrid, sk: FreeSpaceSkeleton, e: Event, t: Sequence[float], seq=None) -> list[WeightChange]:
    """Apply one event, re-evaluating what it touches at translation ``t``."""
    rows, cols, corners = touched_sets(e, sk.n_pi, sk.n_sigma)
    return resync(g, sk, t, rows, cols, corners, seq if seq is not None else _seq_after(g))


# The sweep ------------------------------------------------------------------


@dataclass
class TickRecord:
    lam: float
    events: list[Event]
    decision: bool
    updates: int = 0  # effective lattice changes pushed to the backend (arrival + departure)
    writes: int = 0  # raw writes emitted by grid operations


@dataclass
class GapRecord:
    lo: float
    hi: float
    mid: float
    decision: bool


@dataclass
class SweepResult:
    intervals: list[list[float]]
    plan: SweepPlan
    ticks: list[TickRecord] = field(default_factory=list)
    gaps: list[GapRecord] = field(default_factory=list)
    initial_updates: int = 0
    lattice_size: int = 0
    backend_updates: int = 0
    backend_queries: int = 0
    selfcheck_failures: list[str] = field(default_factory=list)


class Sweeper:
    """Owns a skeleton, grid and backend and moves sigma's translation around."""

    def __init__(self, pi: Curve, sigma: Curve, delta: float, t0: Sequence[float] = (0.0, 0.0),
                 backend: ReachabilityBackend | str | None = None, tol: float = EPS, selfcheck: bool = False):
        self.pi, self.sigma, self.delta, self.tol = pi, sigma, float(delta), tol
        self.t = Point(float(t0[0]), float(t0[1]))
        self.sk = build_skeleton(pi, sigma, delta, tol, self.t)
        self.grid = build_grid(build_fsg(self.sk), self.sk)
        self.seq = _seq_after(self.grid)
        if backend is None or isinstance(backend, str):
            backend = make_backend(backend or "baseline")
        self.backend = backend
        self.backend.init(self.grid.weights)
        self.writes = 0
        self.selfcheck = selfcheck
        self.failures: list[str] = []

    def query(self) -> bool:
        return self.backend.query()

    def _phase(self, t: Point, rows, cols, corners) -> tuple[int, int]:
        before = self.backend.updates
        changes = resync(self.grid, self.sk, t, rows, cols, corners, self.seq)
        self.t = t
        cells = {(c.col, c.row) for c in changes}
        for c, r in sorted(cells):
            self.backend.set_weight(c, r, int(self.grid.weights[c, r]))
        self.writes += len(changes)
        return self.backend.updates - before, len(changes)

    def resync_all(self, t: Sequence[float]) -> tuple[int, int]:
        g = self.grid
        corners = [(i, j) for i in range(g.n_pi) for j in range(g.n_sigma)]
        return self._phase(Point(float(t[0]), float(t[1])), range(g.n_sigma - 1), range(g.n_pi - 1), corners)

    def _check(self, where: str, decision: bool, t: Point) -> None:
        oracle = alt_godau_decide(self.pi, self.sigma, self.delta, self.tol, t)
        if oracle != decision:
            self.failures.append(f"{where}: grid says {decision}, alt-godau says {oracle}")
        problems = audit_grid(self.grid, self.sk)
        if problems:
            self.failures.append(f"{where}: " + "; ".join(problems[:3]))

    def run(self, plan: SweepPlan, query_all: bool = True) -> SweepResult:
        """Process ``plan`` assuming the current state is the state at ``plan.lo``."""
        v, o = plan.direction, plan.origin
        n_pi, n_sigma = self.grid.n_pi, self.grid.n_sigma

        def at(lam: float) -> Point:
            return Point(o.x + lam * v.x, o.y + lam * v.y)

        def ask() -> bool:
            return self.query() if query_all else False

        q0 = self.backend.queries
        u0 = self.backend.updates
        res = SweepResult([], plan, lattice_size=self.grid.n_cols * self.grid.n_rows)
        pieces: list[tuple[float, float, bool]] = []
        ticks = plan.ticks()
        prev = plan.lo
        pending: tuple = ((), (), ())  # what the previous tick touched
        last: Optional[TickRecord] = None
        for k, tick in enumerate(ticks):
            rows, cols, corners = set(), set(), set()
            for e in tick.events:
                r, c, cn = touched_sets(e, n_pi, n_sigma)
                rows |= r
                cols |= c
                corners |= cn
            lam = max(plan.lo, min(plan.hi, tick.lam))
            if lam > prev:
                mid = 0.5 * (prev + lam)
                du, dw = self._phase(at(mid), *pending)
                if last is not None:
                    last.updates += du
                    last.writes += dw
                dec = ask()
                if self.selfcheck and query_all:
                    self._check(f"gap ({prev}, {lam})", dec, at(mid))
                res.gaps.append(GapRecord(prev, lam, mid, dec))
                pieces.append((prev, lam, dec))
            du, dw = self._phase(at(lam), rows, cols, corners)
            dec = ask()
            last = TickRecord(lam, tick.events, dec, du, dw)
            res.ticks.append(last)
            pieces.append((lam, lam, dec))
            prev = lam
            pending = (rows, cols, corners)
        if prev < plan.hi or not ticks:
            mid = 0.5 * (prev + plan.hi)
            du, dw = self._phase(at(mid), *pending)
            if last is not None:
                last.updates += du
                last.writes += dw
            dec = self.query()
            if self.selfcheck:
                self._check(f"gap ({prev}, {plan.hi})", dec, at(mid))
            res.gaps.append(GapRecord(prev, plan.hi, mid, dec))
            pieces.append((prev, plan.hi, dec))
        res.intervals = _merge(pieces)
        res.backend_updates = self.backend.updates - u0
        res.backend_queries = self.backend.queries - q0
        res.selfcheck_failures = list(self.failures)
        return res

    def leg(self, target: Sequence[float]) -> bool:
        """Move straight from the current translation to ``target``; decision there."""
        start = self.t
        dx, dy = target[0] - start.x, target[1] - start.y
        length = math.hypot(dx, dy)
        if length <= self.tol:
            self.resync_all(target)
            return self.query()
        plan = enumerate_sweep_events(self.pi, self.sigma, (dx, dy), (0.0, length), self.delta, self.tol, start)
        self.run(plan, query_all=False)
        # land exactly on the target so the next leg starts from it
        self.resync_all(target)
        return self.query()


def _merge(pieces: list[tuple[float, float, bool]]) -> list[list[float]]:
    out: list[list[float]] = []
    for a, b, ok in sorted(pieces):
        if not ok:
            continue
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return out


def run_sweep(pi: Curve, sigma: Curve, v, lam_range: Optional[Sequence[float]], delta: float,
              backend: ReachabilityBackend | str | None = "baseline", tol: float = EPS,
              origin: Sequence[float] = (0.0, 0.0), selfcheck: bool = False,
              trace: Optional[IO[str]] = None) -> SweepResult:
    """Full sweep with per-tick and per-gap records."""
    if lam_range is None:
        lam_range = default_range(pi, sigma, v, delta, origin)
    plan = enumerate_sweep_events(pi, sigma, v, lam_range, delta, tol, origin)
    start = Point(origin[0] + plan.lo * plan.direction.x, origin[1] + plan.lo * plan.direction.y)
    sw = Sweeper(pi, sigma, delta, start, backend, tol, selfcheck)
    before = sw.backend.updates
    res = sw.run(plan)
    res.initial_updates = before
    if trace is not None:
        write_trace(res, trace)
    return res


def sweep_decide(pi: Curve, sigma: Curve, v, lam_range: Optional[Sequence[float]], delta: float,
                 backend: ReachabilityBackend | str | None = "baseline", tol: float = EPS) -> list[list[float]]:
    """Maximal closed lam-intervals on which d_F(pi, sigma + lam * v) <= delta."""
    return run_sweep(pi, sigma, v, lam_range, delta, backend, tol).intervals


def write_trace(res: SweepResult, out: IO[str]) -> int:
    """JSON Lines, one line per event.

    A tick's lattice changes are reported on its first event; the other
    events of the same tick report 0, so the column sums to the total.
    """
    n = 0
    for k, tick in enumerate(res.ticks):
        for idx, e in enumerate(tick.events):
            row = e.to_dict()
            row["tick"] = k
            row["changes"] = tick.updates if idx == 0 else 0
            out.write(json.dumps(row) + "\n")
            n += 1
    return n
