"""Free-space skeleton and the classic reachability decision.

Conventions (0-based throughout):

* the x axis of the diagram follows ``pi`` and the y axis follows ``sigma``;
* the vertical boundary ``(i, w)`` is the piece of l(pi_i) inside row ``w``;
  its free interval is parameterised along the sigma edge ``w``;
* the horizontal boundary ``(j, i)`` is the piece of l(sigma_j) inside
  column ``i``, parameterised along the pi edge ``i``.

Critical points are free-interval endpoints strictly inside their boundary
piece.  Endpoints that land on a corner are snapped to 0/1 by
:func:`free_interval` and never count as critical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Sequence

from .curves import Curve
from .geometry import EPS, Point, Segment, free_interval, within

Interval = Optional[tuple[float, float]]

LO, HI = 0, 1


class CriticalPoint(NamedTuple):
    owner: int  # index of the vertex whose boundary carries the point
    end: int  # LO or HI end of that boundary's interval
    pos: float  # parameter along the strip's edge


def _crit_ends(iv: Interval) -> Iterator[tuple[int, float]]:
    if iv is None:
        return
    lo, hi = iv
    if 0.0 < lo < 1.0:
        yield LO, lo
    if 0.0 < hi < 1.0:
        yield HI, hi


@dataclass
class FreeSpaceSkeleton:
    """Free intervals of every cell boundary plus corner membership.

    The skeleton stores ``pi`` and the untranslated ``sigma``; every entry is
    evaluated for some translation of ``sigma``.  A freshly built skeleton
    uses one translation everywhere, while the event sweep re-evaluates
    individual boundaries as it moves.
    """

    pi: Curve
    sigma: Curve
    delta: float
    tol: float
    vert: list[list[Interval]] = field(repr=False)  # vert[i][w]
    horz: list[list[Interval]] = field(repr=False)  # horz[j][i]
    corners: list[list[bool]] = field(repr=False)  # corners[i][j]

    @property
    def n_pi(self) -> int:
        return self.pi.n

    @property
    def n_sigma(self) -> int:
        return self.sigma.n

    # evaluation at a translation of sigma -------------------------------

    def eval_vertical(self, i: int, w: int, t: Sequence[float]) -> Interval:
        s0, s1 = self.sigma[w], self.sigma[w + 1]
        seg = Segment(Point(s0.x + t[0], s0.y + t[1]), Point(s1.x + t[0], s1.y + t[1]))
        return free_interval(self.pi[i], self.delta, seg, self.tol)

    def eval_horizontal(self, j: int, i: int, t: Sequence[float]) -> Interval:
        s = self.sigma[j]
        c = Point(s.x + t[0], s.y + t[1])
        return free_interval(c, self.delta, Segment(self.pi[i], self.pi[i + 1]), self.tol)

    def eval_corner(self, i: int, j: int, t: Sequence[float]) -> bool:
        p, s = self.pi[i], self.sigma[j]
        return within(math.hypot(s.x + t[0] - p.x, s.y + t[1] - p.y), self.delta, self.tol)

    # critical points ----------------------------------------------------

    def row_critical(self, w: int) -> list[CriticalPoint]:
        """Critical points on vertical boundaries inside row ``w``."""
        return [CriticalPoint(i, end, pos) for i in range(self.n_pi) for end, pos in _crit_ends(self.vert[i][w])]

    def col_critical(self, i: int) -> list[CriticalPoint]:
        """Critical points on horizontal boundaries inside column ``i``."""
        return [CriticalPoint(j, end, pos) for j in range(self.n_sigma) for end, pos in _crit_ends(self.horz[j][i])]

    @property
    def m_row(self) -> list[int]:
        return [len(self.row_critical(w)) for w in range(self.n_sigma - 1)]

    @property
    def m_col(self) -> list[int]:
        return [len(self.col_critical(i)) for i in range(self.n_pi - 1)]

    def vertical_member(self, i: int, w: int, pos: float) -> bool:
        iv = self.vert[i][w]
        return iv is not None and iv[0] - self.tol <= pos <= iv[1] + self.tol

    def horizontal_member(self, j: int, i: int, pos: float) -> bool:
        iv = self.horz[j][i]
        return iv is not None and iv[0] - self.tol <= pos <= iv[1] + self.tol


def build_skeleton(pi: Curve, sigma: Curve, delta: float, tol: float = EPS, t: Sequence[float] = (0.0, 0.0)) -> FreeSpaceSkeleton:
    """Skeleton of the free space of ``pi`` and ``sigma + t`` at ``delta``."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    sk = FreeSpaceSkeleton(pi, sigma, float(delta), tol, [], [], [])
    sk.vert = [[sk.eval_vertical(i, w, t) for w in range(sigma.n - 1)] for i in range(pi.n)]
    sk.horz = [[sk.eval_horizontal(j, i, t) for i in range(pi.n - 1)] for j in range(sigma.n)]
    sk.corners = [[sk.eval_corner(i, j, t) for j in range(sigma.n)] for i in range(pi.n)]
    return sk


def corner_free(pi: Curve, sigma: Curve, delta: float, i: int, j: int, tol: float = 0.0) -> bool:
    return within(math.hypot(pi[i].x - sigma[j].x, pi[i].y - sigma[j].y), delta, tol)


def _from_bottom(free: Interval, reach: Interval, tol: float) -> Interval:
    # reachable part of ``free`` given reachable entry ``reach`` on the
    # parallel side of the cell (monotone in the shared parameter)
    if free is None or reach is None:
        return None
    lo = max(free[0], reach[0])
    if lo > free[1] + tol:
        return None
    return (min(lo, free[1]), free[1])


def skeleton_decide(sk: FreeSpaceSkeleton) -> bool:
    """Reachability of (n, n) from (1, 1) through the skeleton's free space.

    Reachable sub-intervals are propagated cell by cell; an entry through
    the bottom side reaches the whole free right side (and vice versa) by
    convexity of the free space inside a cell.
    """
    tol = sk.tol
    npi, nsg = sk.n_pi, sk.n_sigma
    if not sk.corners[0][0]:
        return False
    # reach_v[i][w]: reachable part of vertical boundary (i, w)
    reach_v: list[list[Interval]] = [[None] * (nsg - 1) for _ in range(npi)]
    reach_h: list[list[Interval]] = [[None] * (npi - 1) for _ in range(nsg)]
    ok = True
    for w in range(nsg - 1):
        iv = sk.vert[0][w]
        if ok and iv is not None and iv[0] == 0.0:
            reach_v[0][w] = iv
            ok = iv[1] == 1.0
        else:
            ok = False
    ok = True
    for i in range(npi - 1):
        iv = sk.horz[0][i]
        if ok and iv is not None and iv[0] == 0.0:
            reach_h[0][i] = iv
            ok = iv[1] == 1.0
        else:
            ok = False
    for w in range(nsg - 1):
        for i in range(npi - 1):
            left, bottom = reach_v[i][w], reach_h[w][i]
            right_free, top_free = sk.vert[i + 1][w], sk.horz[w + 1][i]
            reach_v[i + 1][w] = right_free if bottom is not None else _from_bottom(right_free, left, tol)
            reach_h[w + 1][i] = top_free if left is not None else _from_bottom(top_free, bottom, tol)
    end_v = reach_v[npi - 1][nsg - 2]
    end_h = reach_h[nsg - 1][npi - 2]
    return (end_v is not None and end_v[1] == 1.0) or (end_h is not None and end_h[1] == 1.0)


def alt_godau_decide(pi: Curve, sigma: Curve, delta: float, tol: float = EPS, t: Sequence[float] = (0.0, 0.0)) -> bool:
    """True iff the Fréchet distance of ``pi`` and ``sigma + t`` is at most ``delta``."""
    return skeleton_decide(build_skeleton(pi, sigma, delta, tol, t))


def frechet_value(pi: Curve, sigma: Curve, value_tol: float = 1e-9, tol: float = EPS) -> float:
    """Fréchet distance up to ``value_tol`` by bisection on the decision."""
    if value_tol <= 0:
        raise ValueError("value_tol must be positive")
    hi = max(math.hypot(p.x - q.x, p.y - q.y) for p in pi for q in sigma)
    hi += sum(e.length() for e in pi.edges()) + sum(e.length() for e in sigma.edges())
    lo = max(math.hypot(pi[0].x - sigma[0].x, pi[0].y - sigma[0].y),
             math.hypot(pi[-1].x - sigma[-1].x, pi[-1].y - sigma[-1].y))
    if alt_godau_decide(pi, sigma, lo, tol=0.0):
        return lo
    while hi - lo > value_tol:
        mid = 0.5 * (lo + hi)
        if alt_godau_decide(pi, sigma, mid, tol=0.0):
            hi = mid
        else:
            lo = mid
    return hi
