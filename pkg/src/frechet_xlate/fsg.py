"""Refined free-space graph: the diagram refined by critical grid lines.

Vertical lines are the FSD boundaries l(pi_i) interleaved with the grid
lines of column critical points; horizontal lines likewise for sigma and the
row critical points.  Vertices sit at line crossings and edges (right / up to
the neighbour in line order) stay implicit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .freespace import FreeSpaceSkeleton
from .reach import lattice_reachable

BOUNDARY, CRITICAL = "boundary", "critical"


class GridLine(NamedTuple):
    """A vertical or horizontal line of the refined diagram.

    ``origin`` is BOUNDARY for l(pi_i) / l(sigma_j) (``owner`` is then i or
    j) and CRITICAL for a critical grid line, in which case ``owner`` is the
    vertex whose boundary carries the critical point, ``strip`` is the
    row/column containing it and ``end`` says which interval end it is.
    """

    origin: str
    owner: int
    strip: int
    end: int
    pos: float
    seq: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.owner, self.end)

    def sort_key(self) -> tuple[float, int]:
        return (self.pos, self.seq)


@dataclass
class RefinedFSG:
    vertical: list[GridLine]
    horizontal: list[GridLine]
    weights: np.ndarray = field(repr=False)  # [vertical index, horizontal index]
    classes: np.ndarray = field(repr=False)  # 0 corner, 1 boundary, 2 interior

    @property
    def shape(self) -> tuple[int, int]:
        return self.weights.shape

    def to_json(self) -> str:
        def line(g: GridLine):
            return {"origin": g.origin, "owner": g.owner, "strip": g.strip, "end": g.end, "pos": g.pos, "seq": g.seq}

        return json.dumps({
            "vertical": [line(g) for g in self.vertical],
            "horizontal": [line(g) for g in self.horizontal],
            "weights": self.weights.T[::-1].astype(int).tolist(),
        })


def ordered_lines(sk: FreeSpaceSkeleton) -> tuple[list[GridLine], list[GridLine]]:
    """Vertical and horizontal lines in geometric order.

    Sequence numbers follow a fixed enumeration order so that exact ties
    between critical lines resolve the same way on every rebuild.
    """
    seq = 0
    vertical: list[GridLine] = []
    for i in range(sk.n_pi):
        vertical.append(GridLine(BOUNDARY, i, i, 0, 0.0, -1))
        if i < sk.n_pi - 1:
            strip = []
            for cp in sk.col_critical(i):
                strip.append(GridLine(CRITICAL, cp.owner, i, cp.end, cp.pos, seq))
                seq += 1
            vertical.extend(sorted(strip, key=GridLine.sort_key))
    horizontal: list[GridLine] = []
    for j in range(sk.n_sigma):
        horizontal.append(GridLine(BOUNDARY, j, j, 0, 0.0, -1))
        if j < sk.n_sigma - 1:
            strip = []
            for cp in sk.row_critical(j):
                strip.append(GridLine(CRITICAL, cp.owner, j, cp.end, cp.pos, seq))
                seq += 1
            horizontal.extend(sorted(strip, key=GridLine.sort_key))
    return vertical, horizontal


def crossing_weight(sk: FreeSpaceSkeleton, v: GridLine, h: GridLine) -> tuple[int, int]:
    """(weight, class) of the vertex where ``v`` meets ``h``."""
    if v.origin == BOUNDARY and h.origin == BOUNDARY:
        return int(sk.corners[v.owner][h.owner]), 0
    if v.origin == BOUNDARY:
        # h is a row critical line in row h.strip
        if h.owner == v.owner:
            return 1, 1
        return int(sk.vertical_member(v.owner, h.strip, h.pos)), 1
    if h.origin == BOUNDARY:
        if v.owner == h.owner:
            return 1, 1
        return int(sk.horizontal_member(h.owner, v.strip, v.pos)), 1
    return 1, 2


def build_fsg(sk: FreeSpaceSkeleton) -> RefinedFSG:
    vertical, horizontal = ordered_lines(sk)
    w = np.ones((len(vertical), len(horizontal)), dtype=np.uint8)
    cls = np.full(w.shape, 2, dtype=np.uint8)
    vb = [a for a, g in enumerate(vertical) if g.origin == BOUNDARY]
    hb = [b for b, g in enumerate(horizontal) if g.origin == BOUNDARY]
    for a in vb:
        for b in range(len(horizontal)):
            w[a, b], cls[a, b] = crossing_weight(sk, vertical[a], horizontal[b])
    for b in hb:
        for a in range(len(vertical)):
            w[a, b], cls[a, b] = crossing_weight(sk, vertical[a], horizontal[b])
    assert np.all(w[cls == 2] == 1), "interior vertices must be activated"
    return RefinedFSG(vertical, horizontal, w, cls)


def fsg_reachable(g: RefinedFSG, diagonal: bool = True) -> bool:
    """Monotone path over activated vertices from corner to corner.

    A diagonal step joins two free vertices of one refined cell, so the
    straight segment between them stays in the (convex) free space of a
    single FSD cell.  Without diagonals, instances whose free space is only a
    segment through a cell (exactly at d_F) are reported infeasible.
    """
    return lattice_reachable(g.weights, diagonal=diagonal)
