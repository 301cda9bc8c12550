"""Fixed-size grid graph with placeholder slots.

Every row strip (between l(sigma_w) and l(sigma_{w+1})) owns ``2 * n_pi``
lattice rows and every column strip owns ``2 * n_sigma`` lattice columns.
Actual grid lines fill the lowest slots of their strip in geometric order;
the remaining slots are placeholders.  Because the lattice never changes
size, inserting or removing a grid line becomes a bounded set of weight
rewrites on the FSD-boundary crossings of that strip.

Lattice coordinates are (col, row) with (0, 0) the start vertex.  Edges are
implicit: right, up and diagonal (up-right).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .freespace import FreeSpaceSkeleton
from .fsg import BOUNDARY, GridLine, RefinedFSG
from .reach import ReachabilityBackend, lattice_reachable


class GridInvariantError(RuntimeError):
    """A grid operation would break the capacity or slot-role invariants."""


class WeightChange(NamedTuple):
    col: int
    row: int
    weight: int


@dataclass
class PlaceholderGrid:
    n_pi: int
    n_sigma: int
    weights: np.ndarray = field(repr=False)  # [col, row], uint8
    row_lines: list[list[GridLine]]  # actual lines of each row strip, slot order
    col_lines: list[list[GridLine]]

    # geometry of the lattice ---------------------------------------------

    @property
    def n_cols(self) -> int:
        return self.n_pi + 2 * self.n_sigma * (self.n_pi - 1)

    @property
    def n_rows(self) -> int:
        return self.n_sigma + 2 * self.n_pi * (self.n_sigma - 1)

    @property
    def row_capacity(self) -> int:
        return 2 * self.n_pi

    @property
    def col_capacity(self) -> int:
        return 2 * self.n_sigma

    def col_of_vertex(self, i: int) -> int:
        """Lattice column of the FSD boundary l(pi_i)."""
        return i * (1 + 2 * self.n_sigma)

    def row_of_vertex(self, j: int) -> int:
        """Lattice row of the FSD boundary l(sigma_j)."""
        return j * (1 + 2 * self.n_pi)

    def row_slot(self, w: int, r: int) -> int:
        return self.row_of_vertex(w) + 1 + r

    def col_slot(self, i: int, r: int) -> int:
        return self.col_of_vertex(i) + 1 + r

    def row_placeholders(self, w: int) -> list[int]:
        """Lattice rows of the placeholder registry of row strip ``w``, lowest first."""
        return [self.row_slot(w, r) for r in range(len(self.row_lines[w]), self.row_capacity)]

    def col_placeholders(self, i: int) -> list[int]:
        return [self.col_slot(i, r) for r in range(len(self.col_lines[i]), self.col_capacity)]

    def boundary_cols(self) -> range:
        return range(0, self.n_cols, 1 + 2 * self.n_sigma)

    def boundary_rows(self) -> range:
        return range(0, self.n_rows, 1 + 2 * self.n_pi)

    def is_boundary_col(self, col: int) -> bool:
        return col % (1 + 2 * self.n_sigma) == 0

    def is_boundary_row(self, row: int) -> bool:
        return row % (1 + 2 * self.n_pi) == 0

    def slot_role(self, col: int, row: int) -> str:
        bc, br = self.is_boundary_col(col), self.is_boundary_row(row)
        if bc and br:
            return "corner"
        if bc or br:
            return "boundary"
        return "interior"

    # mutation --------------------------------------------------------------

    def _set(self, col: int, row: int, w: int, out: list[WeightChange]) -> None:
        if self.weights[col, row] != w:
            self.weights[col, row] = w
            out.append(WeightChange(col, row, int(w)))


def _row_line_weight(sk: FreeSpaceSkeleton, i: int, line: GridLine) -> int:
    if line.owner == i:
        return 1
    return int(sk.vertical_member(i, line.strip, line.pos))


def _col_line_weight(sk: FreeSpaceSkeleton, j: int, line: GridLine) -> int:
    if line.owner == j:
        return 1
    return int(sk.horizontal_member(j, line.strip, line.pos))


def target_weights(g: PlaceholderGrid, sk: FreeSpaceSkeleton) -> np.ndarray:
    """Weights implied by the skeleton for the grid's current slot assignment."""
    w = np.ones((g.n_cols, g.n_rows), dtype=np.uint8)
    for i in range(g.n_pi):
        c = g.col_of_vertex(i)
        for j in range(g.n_sigma):
            w[c, g.row_of_vertex(j)] = sk.corners[i][j]
        for s in range(g.n_sigma - 1):
            lines = g.row_lines[s]
            for r in range(g.row_capacity):
                row = g.row_slot(s, r)
                w[c, row] = _row_line_weight(sk, i, lines[r]) if r < len(lines) else sk.corners[i][s + 1]
    for j in range(g.n_sigma):
        row = g.row_of_vertex(j)
        for s in range(g.n_pi - 1):
            lines = g.col_lines[s]
            for r in range(g.col_capacity):
                col = g.col_slot(s, r)
                w[col, row] = _col_line_weight(sk, j, lines[r]) if r < len(lines) else sk.corners[s + 1][j]
    return w


def build_grid(fsg: RefinedFSG, sk: FreeSpaceSkeleton) -> PlaceholderGrid:
    """Lay the refined FSG's lines into the fixed lattice and weight every slot."""
    n_pi, n_sigma = sk.n_pi, sk.n_sigma
    row_lines: list[list[GridLine]] = [[] for _ in range(n_sigma - 1)]
    col_lines: list[list[GridLine]] = [[] for _ in range(n_pi - 1)]
    for line in fsg.horizontal:
        if line.origin != BOUNDARY:
            row_lines[line.strip].append(line)
    for line in fsg.vertical:
        if line.origin != BOUNDARY:
            col_lines[line.strip].append(line)
    for lines, cap in [(row_lines, 2 * n_pi), (col_lines, 2 * n_sigma)]:
        for strip in lines:
            if len(strip) > cap:
                raise GridInvariantError("more grid lines than slots in a strip")
    g = PlaceholderGrid(n_pi, n_sigma, np.zeros((0, 0), dtype=np.uint8), row_lines, col_lines)
    g.weights = target_weights(g, sk)
    return g


def grid_reachable(g: PlaceholderGrid, backend: Optional[ReachabilityBackend] = None) -> bool:
    """Monotone right/up/diagonal path over activated slots from (0, 0) to the far corner."""
    if backend is None:
        return lattice_reachable(g.weights, diagonal=True)
    return backend.query()


# Operations ---------------------------------------------------------------


def apply_corner_op(g: PlaceholderGrid, i: int, j: int, weight: int) -> list[WeightChange]:
    """Set corner (pi_i, sigma_j) and mirror it onto the placeholders that copy it.

    Those are the row placeholders of strip j-1 on l(pi_i) (corner above) and
    the column placeholders of strip i-1 on l(sigma_j) (corner to the right).
    """
    if not (0 <= i < g.n_pi and 0 <= j < g.n_sigma):
        raise GridInvariantError(f"no corner ({i}, {j})")
    out: list[WeightChange] = []
    col, row = g.col_of_vertex(i), g.row_of_vertex(j)
    g._set(col, row, weight, out)
    if j > 0:
        for r in g.row_placeholders(j - 1):
            g._set(col, r, weight, out)
    if i > 0:
        for c in g.col_placeholders(i - 1):
            g._set(c, row, weight, out)
    return out


def apply_boundary_vertex_op(g: PlaceholderGrid, col: int, row: int, weight: int) -> list[WeightChange]:
    if not (0 <= col < g.n_cols and 0 <= row < g.n_rows):
        raise GridInvariantError(f"slot ({col}, {row}) outside the lattice")
    role = g.slot_role(col, row)
    if role != "boundary":
        raise GridInvariantError(f"slot ({col}, {row}) is a {role} slot, not a boundary slot")
    out: list[WeightChange] = []
    g._set(col, row, weight, out)
    return out


def apply_row_insert(g: PlaceholderGrid, w: int, line: GridLine, index: Optional[int] = None) -> list[WeightChange]:
    """Turn a placeholder of row strip ``w`` into the grid line ``line``.

    ``index`` is the line's position among the strip's actual lines (default:
    above all of them).  Lines above it move up one slot, so the lowest
    placeholder is consumed.  On each boundary column the new slot gets
    weight 1 if that column spawned the line, otherwise the AND of its two
    geometric neighbours.
    """
    lines = g.row_lines[w]
    m = len(lines)
    if m >= g.row_capacity:
        raise GridInvariantError(f"row strip {w} has no placeholder left")
    if index is None:
        index = m
    if not 0 <= index <= m:
        raise GridInvariantError(f"insert position {index} outside 0..{m}")
    out: list[WeightChange] = []
    slot = g.row_slot(w, index)
    top = g.row_of_vertex(w + 1)
    for i in range(g.n_pi):
        c = g.col_of_vertex(i)
        below = g.weights[c, slot - 1]
        above = g.weights[c, slot] if index < m else g.weights[c, top]
        new = 1 if line.owner == i else int(below and above)
        for r in range(m, index, -1):
            g._set(c, g.row_slot(w, r), g.weights[c, g.row_slot(w, r - 1)], out)
        g._set(c, slot, new, out)
    lines.insert(index, line)
    return out


def apply_row_delete(g: PlaceholderGrid, w: int, index: int) -> list[WeightChange]:
    """Remove the ``index``-th actual line of row strip ``w``.

    Lines above it are compacted one slot down and the freed top slot
    becomes the lowest placeholder, weighted like the corner above.
    """
    lines = g.row_lines[w]
    m = len(lines)
    if m == 0:
        raise GridInvariantError(f"row strip {w} has no grid line to delete")
    if not 0 <= index < m:
        raise GridInvariantError(f"delete position {index} outside 0..{m - 1}")
    out: list[WeightChange] = []
    top = g.row_of_vertex(w + 1)
    for i in range(g.n_pi):
        c = g.col_of_vertex(i)
        for r in range(index, m - 1):
            g._set(c, g.row_slot(w, r), g.weights[c, g.row_slot(w, r + 1)], out)
        g._set(c, g.row_slot(w, m - 1), g.weights[c, top], out)
    del lines[index]
    return out


def apply_col_insert(g: PlaceholderGrid, i: int, line: GridLine, index: Optional[int] = None) -> list[WeightChange]:
    """Column counterpart of :func:`apply_row_insert`; the right neighbour of
    the last actual line is l(pi_{i+1})."""
    lines = g.col_lines[i]
    m = len(lines)
    if m >= g.col_capacity:
        raise GridInvariantError(f"column strip {i} has no placeholder left")
    if index is None:
        index = m
    if not 0 <= index <= m:
        raise GridInvariantError(f"insert position {index} outside 0..{m}")
    out: list[WeightChange] = []
    slot = g.col_slot(i, index)
    right = g.col_of_vertex(i + 1)
    for j in range(g.n_sigma):
        r0 = g.row_of_vertex(j)
        left = g.weights[slot - 1, r0]
        nxt = g.weights[slot, r0] if index < m else g.weights[right, r0]
        new = 1 if line.owner == j else int(left and nxt)
        for k in range(m, index, -1):
            g._set(g.col_slot(i, k), r0, g.weights[g.col_slot(i, k - 1), r0], out)
        g._set(slot, r0, new, out)
    lines.insert(index, line)
    return out


def apply_col_delete(g: PlaceholderGrid, i: int, index: int) -> list[WeightChange]:
    lines = g.col_lines[i]
    m = len(lines)
    if m == 0:
        raise GridInvariantError(f"column strip {i} has no grid line to delete")
    if not 0 <= index < m:
        raise GridInvariantError(f"delete position {index} outside 0..{m - 1}")
    out: list[WeightChange] = []
    right = g.col_of_vertex(i + 1)
    for j in range(g.n_sigma):
        r0 = g.row_of_vertex(j)
        for k in range(index, m - 1):
            g._set(g.col_slot(i, k), r0, g.weights[g.col_slot(i, k + 1), r0], out)
        g._set(g.col_slot(i, m - 1), r0, g.weights[right, r0], out)
    del lines[index]
    return out


# Audits -------------------------------------------------------------------


def audit_grid(g: PlaceholderGrid, sk: Optional[FreeSpaceSkeleton] = None) -> list[str]:
    """Invariant violations as messages; empty when the grid is consistent.

    Always checks capacity, interior weights and the placeholder copy rule.
    With a skeleton it also checks every weight against :func:`target_weights`.
    """
    problems: list[str] = []
    if g.weights.shape != (g.n_cols, g.n_rows):
        problems.append(f"lattice shape {g.weights.shape} != {(g.n_cols, g.n_rows)}")
        return problems
    for w, lines in enumerate(g.row_lines):
        if len(lines) > g.row_capacity:
            problems.append(f"row strip {w} over capacity")
        if any(a.sort_key() > b.sort_key() for a, b in zip(lines, lines[1:])):
            problems.append(f"row strip {w} lines out of order")
    for i, lines in enumerate(g.col_lines):
        if len(lines) > g.col_capacity:
            problems.append(f"column strip {i} over capacity")
        if any(a.sort_key() > b.sort_key() for a, b in zip(lines, lines[1:])):
            problems.append(f"column strip {i} lines out of order")
    interior = np.ones_like(g.weights, dtype=bool)
    interior[list(g.boundary_cols()), :] = False
    interior[:, list(g.boundary_rows())] = False
    if not np.all(g.weights[interior] == 1):
        problems.append("interior slot with weight 0")
    for w in range(g.n_sigma - 1):
        top = g.row_of_vertex(w + 1)
        for c in g.boundary_cols():
            for r in g.row_placeholders(w):
                if g.weights[c, r] != g.weights[c, top]:
                    problems.append(f"row placeholder ({c}, {r}) differs from corner above")
    for i in range(g.n_pi - 1):
        right = g.col_of_vertex(i + 1)
        for r0 in g.boundary_rows():
            for c in g.col_placeholders(i):
                if g.weights[c, r0] != g.weights[right, r0]:
                    problems.append(f"column placeholder ({c}, {r0}) differs from corner to the right")
    if sk is not None:
        bad = np.argwhere(target_weights(g, sk) != g.weights)
        problems += [f"slot ({c}, {r}) disagrees with the skeleton" for c, r in bad[:10]]
    return problems


def to_pbm(g: PlaceholderGrid) -> str:
    """Plain PBM (P1) of the lattice; black (1) marks a blocked slot, top row first."""
    lines = ["P1", f"{g.n_cols} {g.n_rows}"]
    for row in range(g.n_rows - 1, -1, -1):
        lines.append(" ".join("0" if g.weights[c, row] else "1" for c in range(g.n_cols)))
    return "\n".join(lines) + "\n"
